"""Latin treebank engineering: harmonization, standardization,
deduplication, period splits, and tagger evaluation."""

__version__ = "0.1.0"
