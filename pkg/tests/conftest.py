import os
import sys

# allow `import oracles` from any rootdir
sys.path.insert(0, os.path.dirname(__file__))
