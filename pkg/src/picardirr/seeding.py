"""Counter-based derivation of per-trial seeds from a master seed."""

import hashlib


def derive_seed(master: int, *counters: int) -> int:
    """64-bit seed for trial ``counters`` under ``master``; order-independent across trials."""
    text = ":".join(str(int(v)) for v in (master, *counters))
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")
