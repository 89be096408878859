from sqlalchemy import create_engine, text
from sqlalchemy.exc import SQLAlchemyError
from sqlalchemy.orm import declarative_base, sessionmaker
from sqlalchemy.pool import StaticPool
import logging

from config import DATABASE_URL

log = logging.getLogger(__name__)


def _engine_options(url):
    # in-memory sqlite must share one connection across sessions and threads
    if url.startswith("sqlite") and (url in ("sqlite://", "sqlite:///:memory:")):
        return {"connect_args": {"check_same_thread": False}, "poolclass": StaticPool}
    if url.startswith("sqlite"):
        return {"connect_args": {"check_same_thread": False}}
    return {"pool_pre_ping": True}


# PostgreSQL in deployment (psycopg2 driver), sqlite locally
engine = create_engine(DATABASE_URL, **_engine_options(DATABASE_URL))
SessionLocal = sessionmaker(bind=engine, autocommit=False, autoflush=False)
Base = declarative_base()


def init_db():
    import models  # noqa: F401  registers the tables
    Base.metadata.create_all(bind=engine)


def check_connection():
    """Returns (ok, detail) for the configured database."""
    try:
        with engine.connect() as conn:
            conn.execute(text("SELECT 1"))
        return True, engine.dialect.name
    except SQLAlchemyError as e:
        log.error("database connection failed: %s", e)
        return False, str(e)


if __name__ == "__main__":
    ok, detail = check_connection()
    print(("Connected to " if ok else "Database connection failed: ") + detail)
