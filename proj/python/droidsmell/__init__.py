"""Security code smell scanner for decoded Android app bundles."""

import json

try:
    from . import _core
except ImportError:  # in-tree build layout
    import _core

__version__ = _core.__version__

__all__ = ["scan", "scan_corpus", "stats_csv", "rules", "parse_manifest", "__version__"]


def scan(path, ruleset="all", exclude_prefixes=(), metadata_csv=""):
    """Scan one decoded bundle directory and return the report as a dict."""
    return json.loads(
        _core.scan_json(str(path), ruleset, list(exclude_prefixes), str(metadata_csv))
    )


def scan_corpus(root, ruleset="all", exclude_prefixes=(), jobs=1, metadata_csv=""):
    """Scan every bundle under a corpus root.

    Returns ``{"reports": [...], "errors": [...]}`` with reports sorted by
    bundle id regardless of ``jobs``.
    """
    return json.loads(
        _core.scan_corpus_json(
            str(root), ruleset, list(exclude_prefixes), int(jobs), str(metadata_csv)
        )
    )


def stats_csv(report_dir, dimension, metadata_csv=""):
    """Aggregate a batch report directory into one CSV dimension.

    ``dimension`` is one of: smell, count, api-level, category, downloads,
    stars, release-year.
    """
    return _core.stats_csv(str(report_dir), dimension, str(metadata_csv))


def rules(ruleset="all"):
    """The rule catalog as a list of dicts."""
    return json.loads(_core.rules_json(ruleset))


def parse_manifest(xml_text):
    """Parse decoded manifest XML into its typed-model summary dict."""
    return json.loads(_core.parse_manifest_json(xml_text))
