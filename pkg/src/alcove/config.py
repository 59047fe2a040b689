"""Process-wide knobs."""

import os

DEFAULT_LENGTH_CAP = 40


def length_cap() -> int:
    """Largest per-embedding length an enumeration may reach; ``ALCOVE_CAP`` overrides."""
    raw = os.environ.get("ALCOVE_CAP", "").strip()
    return int(raw) if raw else DEFAULT_LENGTH_CAP
