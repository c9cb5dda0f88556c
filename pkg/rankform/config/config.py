import os
from typing import Optional
from dotenv import load_dotenv
from loguru import logger

# Load environment variables
load_dotenv()

class Config:
    """
    Centralized configuration for rankform.
    Every value can be overridden through a RANKFORM_* environment variable
    or a .env file in the working directory.
    """

    # Damping and solver defaults
    DEFAULT_C: float = float(os.getenv("RANKFORM_DEFAULT_C", "0.85"))
    SOLVE_TOL: float = float(os.getenv("RANKFORM_SOLVE_TOL", "1e-12"))
    MAX_ITER: int = int(os.getenv("RANKFORM_MAX_ITER", "100000"))
    MAX_NODES: int = int(os.getenv("RANKFORM_MAX_NODES", "5000"))
    NEAR_SINGULAR_C: float = float(os.getenv("RANKFORM_NEAR_SINGULAR_C", "0.99"))

    # Random walks
    WALKS_PER_NODE: int = int(os.getenv("RANKFORM_WALKS_PER_NODE", "100000"))
    MAX_STEPS: int = int(os.getenv("RANKFORM_MAX_STEPS", "10000"))
    WORKERS: int = int(os.getenv("RANKFORM_WORKERS", "4"))

    # Sensitivity analysis
    FD_STEP: float = float(os.getenv("RANKFORM_FD_STEP", "1e-6"))
    DERIVATIVE_RTOL: float = float(os.getenv("RANKFORM_DERIVATIVE_RTOL", "1e-5"))
    CMAX_GRID_POINTS: int = int(os.getenv("RANKFORM_CMAX_GRID_POINTS", "999"))
    CMAX_TOL: float = float(os.getenv("RANKFORM_CMAX_TOL", "1e-6"))

    # Output and logging
    OUTPUT_DIGITS: int = int(os.getenv("RANKFORM_OUTPUT_DIGITS", "12"))
    LOG_LEVEL: str = os.getenv("RANKFORM_LOG_LEVEL", "WARNING").upper()
    LOG_FILE: Optional[str] = os.getenv("RANKFORM_LOG_FILE") or None

    VERSION: str = os.getenv("RANKFORM_VERSION", "1.0.0")

    @classmethod
    def validate(cls) -> bool:
        """
        Validate numeric configuration parameters.

        Returns:
            bool: True if every value is usable, False otherwise.
        """
        checks = {
            "RANKFORM_DEFAULT_C": 0.0 < cls.DEFAULT_C < 1.0,
            "RANKFORM_SOLVE_TOL": cls.SOLVE_TOL > 0.0,
            "RANKFORM_MAX_ITER": cls.MAX_ITER >= 1,
            "RANKFORM_MAX_NODES": cls.MAX_NODES >= 1,
            "RANKFORM_NEAR_SINGULAR_C": 0.0 < cls.NEAR_SINGULAR_C <= 1.0,
            "RANKFORM_WALKS_PER_NODE": cls.WALKS_PER_NODE >= 1,
            "RANKFORM_MAX_STEPS": cls.MAX_STEPS >= 1,
            "RANKFORM_WORKERS": cls.WORKERS >= 1,
            "RANKFORM_FD_STEP": cls.FD_STEP > 0.0,
            "RANKFORM_DERIVATIVE_RTOL": cls.DERIVATIVE_RTOL > 0.0,
            "RANKFORM_CMAX_GRID_POINTS": cls.CMAX_GRID_POINTS >= 3,
            "RANKFORM_CMAX_TOL": cls.CMAX_TOL > 0.0,
            "RANKFORM_OUTPUT_DIGITS": 1 <= cls.OUTPUT_DIGITS <= 17,
        }

        ok = True
        for name, passed in checks.items():
            if not passed:
                logger.warning(f"Invalid configuration value for {name}")
                ok = False
        return ok

    @classmethod
    def debug_info(cls) -> str:
        """Get debug information about configuration"""
        info = {
            "Default c": cls.DEFAULT_C,
            "Solve tolerance": cls.SOLVE_TOL,
            "Max iterations": cls.MAX_ITER,
            "Max nodes": cls.MAX_NODES,
            "Near-singular c": cls.NEAR_SINGULAR_C,
            "Walks per node": cls.WALKS_PER_NODE,
            "Max walk steps": cls.MAX_STEPS,
            "Workers": cls.WORKERS,
            "Finite-difference step": cls.FD_STEP,
            "Derivative rtol": cls.DERIVATIVE_RTOL,
            "c_max grid points": cls.CMAX_GRID_POINTS,
            "c_max tolerance": cls.CMAX_TOL,
            "Output digits": cls.OUTPUT_DIGITS,
            "Log level": cls.LOG_LEVEL,
            "Log file": cls.LOG_FILE or "Not Set",
            "Version": cls.VERSION or "Not Set"
        }

        return "\n".join(f"{k}: {v}" for k, v in info.items())
