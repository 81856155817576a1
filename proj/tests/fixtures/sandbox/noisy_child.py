import subprocess
import sys

# Spawns a grandchild that would outlive a plain kill of the direct child.
subprocess.Popen([sys.executable, "-c", "import time; time.sleep(60)"])
while True:
    pass
