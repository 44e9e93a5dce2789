from pathlib import Path
import sys
import time

from src.cli import main

logger_time = time.strftime("%Y%m%d_%H%M%S")


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:], log_file_path=Path(f"./logs/{logger_time}.log")))
