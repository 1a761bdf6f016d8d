import logging
import sys

from dotenv import load_dotenv

load_dotenv()

from cli import run  # noqa: E402
from core import settings  # noqa: E402

logging.basicConfig(
    level=settings.LOG_LEVEL,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler()],
)

if __name__ == "__main__":
    sys.exit(run())
