from sqlalchemy import Column, Integer, String, DateTime, Text, ForeignKey, func
from sqlalchemy.orm import Session, relationship
from datetime import datetime

from database import Base, SessionLocal, init_db
from terms import format_instance


class CheckRun(Base):
    __tablename__ = "check_runs"

    id = Column(Integer, primary_key=True, index=True)
    check = Column("check_name", String, nullable=False, index=True)
    verdict = Column(String, nullable=False)               # "pass" or "fail"
    checked_count = Column(Integer, nullable=False)
    violation_count = Column(Integer, nullable=False)
    frontier_count = Column(Integer, default=0)
    depth = Column(Integer)
    source = Column(String, default="cli")                 # "cli" or "api"
    program = Column(String, nullable=True)                # path, or None for posted text
    notes = Column(Text, nullable=True)
    timestamp = Column(DateTime, default=datetime.utcnow)

    violations = relationship("ViolationRecord", back_populates="run", cascade="all, delete-orphan")


class ViolationRecord(Base):
    __tablename__ = "violation_records"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("check_runs.id"), nullable=False, index=True)
    kind = Column(String, nullable=False)
    clause_index = Column(Integer, nullable=True)
    instance = Column(Text, nullable=False)
    note = Column(Text, nullable=True)

    run = relationship("CheckRun", back_populates="violations")


def record_report(report, cfg=None, source="cli"):
    """Store a report with its listed violations; returns the run id."""
    init_db()
    db: Session = SessionLocal()
    try:
        run = CheckRun(
            check=report.check,
            verdict="pass" if report.passed else "fail",
            checked_count=report.checked_count,
            violation_count=report.violation_count,
            frontier_count=report.frontier_count,
            depth=getattr(cfg, "depth", None),
            source=source,
            program=getattr(cfg, "program_path", None),
            notes="\n".join(report.notes) or None,
        )
        run.violations = [
            ViolationRecord(kind=v.kind.value, clause_index=v.clause_index,
                            instance=format_instance(v.instance), note=v.note)
            for v in report.violations
        ]
        db.add(run)
        db.commit()
        db.refresh(run)
        return run.id
    finally:
        db.close()


def _run_to_dict(run):
    return {
        "id": run.id,
        "check": run.check,
        "verdict": run.verdict,
        "checked": run.checked_count,
        "violations": run.violation_count,
        "frontier": run.frontier_count,
        "depth": run.depth,
        "source": run.source,
        "program": run.program,
        "timestamp": run.timestamp.strftime("%Y-%m-%d %H:%M:%S"),
        "listed": [
            {"kind": v.kind, "clause": v.clause_index, "instance": v.instance, "note": v.note}
            for v in run.violations
        ],
    }


def recent_runs(check=None, limit=50):
    init_db()
    db: Session = SessionLocal()
    try:
        query = db.query(CheckRun)
        if check:
            query = query.filter(CheckRun.check == check)
        runs = query.order_by(CheckRun.id.desc()).limit(limit).all()
        return [_run_to_dict(r) for r in runs]
    finally:
        db.close()


def run_stats():
    """Pass/fail counts per check."""
    init_db()
    db: Session = SessionLocal()
    try:
        rows = (db.query(CheckRun.check, CheckRun.verdict, func.count(CheckRun.id))
                .group_by(CheckRun.check, CheckRun.verdict).all())
        stats = {}
        for check, verdict, count in rows:
            stats.setdefault(check, {"pass": 0, "fail": 0})[verdict] = count
        return stats
    finally:
        db.close()
