import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    # Bases
    DIM: int = int(os.getenv("PHASEKIT_DIM", "32"))
    HALF_WIDTH: int = int(os.getenv("PHASEKIT_HALF_WIDTH", "16"))
    BOUNDARY: str = os.getenv("PHASEKIT_BOUNDARY", "cyclic").lower()

    # Tolerances
    TOL_IDENTITY: float = float(os.getenv("PHASEKIT_TOL_IDENTITY", "1e-12"))
    TOL_QUADRATURE: float = float(os.getenv("PHASEKIT_TOL_QUADRATURE", "1e-6"))

    # State preparation
    MIN_PREP_NORM: float = float(os.getenv("PHASEKIT_MIN_PREP_NORM", "0.999"))
    ORACLE_PAD: int = int(os.getenv("PHASEKIT_ORACLE_PAD", "4"))

    # Output
    BINS: int = int(os.getenv("PHASEKIT_BINS", "256"))
    OUTPUT_FORMAT: str = os.getenv("PHASEKIT_FORMAT", "json").lower()

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("LOG_FILE", "data/phasekit.log")
