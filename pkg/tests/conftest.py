import os
import sys

# let the suite run from a fresh checkout without installation
sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))
