import pathlib
import sys

try:
    import p3bundles  # noqa: F401
except ImportError:  # fall back to the source tree when not installed
    sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))
