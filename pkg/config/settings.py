"""
Total Closure Lab — Configuration
Search caps, prober bounds, and file locations.
"""
import os
from dotenv import load_dotenv

load_dotenv()

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _int_env(name: str, default: int) -> int:
    """Read an integer setting from the environment, falling back to a default."""
    raw = os.environ.get(name, "")
    return int(raw) if raw.strip() else default


# --- Group enumeration ---
ELEMENT_ENUMERATION_CAP = _int_env("ELEMENT_ENUMERATION_CAP", 100_000)

# --- Closure engine ---
TUPLE_TABLE_CAP = _int_env("TUPLE_TABLE_CAP", 10_000_000)  # n^k cells
CLOSURE_DEGREE_CAP = _int_env("CLOSURE_DEGREE_CAP", 12)
NAIVE_DEGREE_CAP = _int_env("NAIVE_DEGREE_CAP", 8)  # filters all of Sym(n)

# --- Structure analysis ---
BASE_SEARCH_DEGREE_CAP = _int_env("BASE_SEARCH_DEGREE_CAP", 16)

# --- Abstract groups / prober ---
CAYLEY_ORDER_CAP = _int_env("CAYLEY_ORDER_CAP", 128)
LATTICE_ORDER_CAP = _int_env("LATTICE_ORDER_CAP", 64)
ASSOCIATIVITY_CHECK_CAP = _int_env("ASSOCIATIVITY_CHECK_CAP", 128)
PROBE_MIN_DEGREE = _int_env("PROBE_MIN_DEGREE", 12)
PROBE_DEGREE_CAP = _int_env("PROBE_DEGREE_CAP", 16)
COMBINE_DEGREE_CAP = _int_env("COMBINE_DEGREE_CAP", 64)

# --- CLI / reports ---
LOG_LEVEL = os.environ.get("LOG_LEVEL", "WARNING").upper()
REPORT_DIR = os.environ.get("REPORT_DIR", os.path.join(REPO_ROOT, "output", "reports"))
CATALOG_PATH = os.environ.get("CATALOG_PATH", os.path.join(REPO_ROOT, "data", "catalog.json"))
