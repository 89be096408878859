import os
from dotenv import load_dotenv

load_dotenv()

# Slice and search bounds
DEFAULT_DEPTH = int(os.getenv("LPV_DEPTH", 4))
DEFAULT_CAP = int(os.getenv("LPV_CAP", 200000))
DEFAULT_STEP_BOUND = int(os.getenv("LPV_STEP_BOUND", 100000))
MAX_NEGATION_NESTING = int(os.getenv("LPV_MAX_NESTING", 200))

# Reporting
REPORT_LIMIT = int(os.getenv("LPV_REPORT_LIMIT", 20))
WORKERS = int(os.getenv("LPV_WORKERS", 1))
LOG_LEVEL = os.getenv("LPV_LOG_LEVEL", "WARNING")

# Report history / HTTP service
DATABASE_URL = os.getenv("DATABASE_URL", "sqlite:///lpv_runs.db")
ADMIN_KEY = os.getenv("ADMIN_KEY", "supersecret")
ALLOWED_ORIGINS = os.getenv("ALLOWED_ORIGINS", "*")
PORT = int(os.getenv("PORT", 5000))
