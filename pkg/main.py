import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "src"))

from fixpoint_sat.app import create_app
from fixpoint_sat.config import AppConfig

if __name__ == "__main__":
    config = AppConfig.from_env()
    app = create_app(config)
    try:
        sys.exit(app.run(sys.argv[1:]))
    except KeyboardInterrupt:
        print("Stopped")
        sys.exit(130)
