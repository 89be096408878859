import logging
from flask import Flask, jsonify, request
from flask_cors import CORS
from sqlalchemy.exc import SQLAlchemyError

import config
from addedSecurity import require_admin_key
from database import check_connection, init_db
from errors import LpvError, NotDefinite, PairInconsistent, ParseError, ResourceExceeded
from models import recent_runs, record_report, run_stats
from reports import render_report, report_to_dict
from runner import CHECKS, RunConfig, build_slice, inputs_from_text, run_check
from semantics import ground_program, phi_fixpoint
from sldnf import sldnf_solve
from terms import format_atom, format_term

logging.basicConfig(level=config.LOG_LEVEL)
log = logging.getLogger(__name__)

app = Flask(__name__)

# CORS - a comma-separated ALLOWED_ORIGINS becomes a list
origins = [o.strip() for o in config.ALLOWED_ORIGINS.split(",")] if "," in config.ALLOWED_ORIGINS else config.ALLOWED_ORIGINS
CORS(app, origins=origins)

init_db()


def _constants(value):
    if isinstance(value, str):
        return tuple(c.strip() for c in value.split(",") if c.strip())
    return tuple(value or ())


def _run_config(data, check):
    return RunConfig(
        check=check,
        depth=int(data.get("depth", config.DEFAULT_DEPTH)),
        cap=int(data.get("cap", config.DEFAULT_CAP)),
        step_bound=int(data.get("step_bound", config.DEFAULT_STEP_BOUND)),
        constants=_constants(data.get("constants")),
        report_limit=int(data.get("report_limit", config.REPORT_LIMIT)) or None,
        fmt=data.get("format", "machine"),
    )


def _inputs(data):
    return inputs_from_text(data["program"], data.get("spec"), data.get("spec_compl"),
                            data.get("levels"), data.get("query"))


def _error(e):
    """Map toolkit errors to (json, status) in one place."""
    if isinstance(e, ParseError):
        return jsonify({"error": "parse error", "details": str(e), "line": e.line, "column": e.column}), 400
    if isinstance(e, (NotDefinite, ValueError, KeyError, TypeError)):
        return jsonify({"error": "invalid request", "details": str(e)}), 400
    if isinstance(e, ResourceExceeded):
        return jsonify({"error": "resource exceeded", "details": str(e)}), 413
    if isinstance(e, LpvError):
        return jsonify({"error": "verification error", "details": str(e)}), 400
    log.exception("unexpected failure")
    return jsonify({"error": "internal error", "details": str(e)}), 500


def _record(report, cfg):
    try:
        return record_report(report, cfg, source="api")
    except SQLAlchemyError as e:
        log.warning("could not record the report: %s", e)
        return None


@app.route("/", methods=["GET"])
def home():
    return jsonify({"message": "lpv verification API is running", "checks": sorted(CHECKS)}), 200


@app.route("/api/check", methods=["POST"])
def check():
    """
    POST payload:
    {
      "check": "check-correct",
      "program": "q(a).",
      "spec": "q(X) := true.",
      "spec_compl": "...", "levels": "...",
      "depth": 2, "constants": ["a", "b"]
    }
    """
    data = request.get_json(silent=True) or {}
    name = data.get("check")
    if name not in CHECKS:
        return jsonify({"error": "unknown check", "details": f"expected one of {sorted(CHECKS)}"}), 400
    if not data.get("program"):
        return jsonify({"error": "program_required"}), 400
    try:
        cfg = _run_config(data, name)
        report = run_check(cfg, _inputs(data))
    except PairInconsistent as e:
        return jsonify({"error": "specification pair inconsistent", "details": str(e),
                        "report": report_to_dict(e.report)}), 409
    except Exception as e:
        return _error(e)

    run_id = _record(report, cfg)
    return jsonify({
        "report": report_to_dict(report),
        "text": render_report(report, cfg.fmt),
        "run_id": run_id,
    }), 200


@app.route("/api/semantics", methods=["POST"])
def semantics():
    data = request.get_json(silent=True) or {}
    if not data.get("program"):
        return jsonify({"error": "program_required"}), 400
    try:
        cfg = _run_config(data, "semantics")
        inputs = _inputs(data)
        slice_ = build_slice(inputs, cfg)
        sem, steps = phi_fixpoint(ground_program(inputs.program, slice_, cfg.cap))
    except Exception as e:
        return _error(e)

    atoms = [{"atom": format_atom(a), "status": sem.status(a)} for a in slice_.atoms]
    return jsonify({
        "iterations": steps,
        "true": len(sem.true_atoms),
        "false": len(sem.false_atoms),
        "undefined": len(atoms) - len(sem.true_atoms) - len(sem.false_atoms),
        "atoms": atoms,
    }), 200


@app.route("/api/solve", methods=["POST"])
def solve():
    data = request.get_json(silent=True) or {}
    if not data.get("program") or not data.get("query"):
        return jsonify({"error": "program_and_query_required"}), 400
    try:
        cfg = _run_config(data, "solve")
        inputs = _inputs(data)
        outcome = sldnf_solve(inputs.program, inputs.query, cfg.step_bound)
    except Exception as e:
        return _error(e)

    answers = [{name: format_term(t) for name, t in s.items()} for s in outcome.answer_substitutions()]
    answers.sort(key=lambda a: sorted(a.items()))
    return jsonify({
        "outcome": outcome.kind.value,
        "succeeded": outcome.succeeded,
        "failed": outcome.failed,
        "answers": answers,
        "floundered_goal": outcome.floundered_goal or None,
        "steps": outcome.steps,
    }), 200


@app.route("/api/runs", methods=["GET"])
def runs():
    name = request.args.get("check")
    try:
        limit = int(request.args.get("limit", 50))
    except ValueError as e:
        return _error(e)
    out = recent_runs(name, limit)
    return jsonify({"count": len(out), "runs": out}), 200


@app.route("/api/stats", methods=["GET"])
@require_admin_key
def stats():
    ok, detail = check_connection()
    return jsonify({"database": {"ok": ok, "detail": detail}, "checks": run_stats()}), 200


# ------------------------------- Run ---------------------------------------
if __name__ == "__main__":
    app.run(debug=True, port=config.PORT)
