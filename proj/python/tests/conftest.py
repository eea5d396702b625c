import os
import sys

# ctest points this at the build tree; an editable install's import hook would
# otherwise shadow the freshly built module
_tree = os.environ.get("WITTLIFT_BUILD_TREE")
if _tree:
    sys.meta_path[:] = [f for f in sys.meta_path if "ScikitBuild" not in type(f).__name__]
    sys.path.insert(0, _tree)
    for name in [m for m in sys.modules if m == "wittlift" or m.startswith("wittlift.")]:
        del sys.modules[name]
