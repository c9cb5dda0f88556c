import sys
from typing import List, Optional

from loguru import logger

from rankform.app import RankForm
from rankform.config.config import Config


class RankFormRunner:
    def __init__(self):
        self.app: Optional[RankForm] = None
        self._setup_logging()

    def _setup_logging(self) -> None:
        """Configure logging settings"""
        logger.remove()  # Remove default handler
        if Config.LOG_FILE:
            logger.add(
                Config.LOG_FILE,
                rotation="1 day",
                retention="7 days",
                compression="zip",
                level="DEBUG",
                format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
            )
        logger.add(sys.stderr, level=Config.LOG_LEVEL)

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Run one command and return its exit code"""
        try:
            self.app = RankForm()
            return self.app.run(argv)
        except KeyboardInterrupt:
            logger.warning("Received keyboard interrupt")
            return 130
        except Exception as e:
            logger.error(f"Fatal error: {e}")
            return 1


def main() -> None:
    """Main entry point"""
    if sys.version_info < (3, 8):
        sys.exit("Python 3.8 or higher is required.")

    runner = RankFormRunner()
    sys.exit(runner.run(sys.argv[1:]))


if __name__ == "__main__":
    main()
