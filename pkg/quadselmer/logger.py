# quadselmer/logger.py
from __future__ import annotations

import logging
import os
import sys
from datetime import datetime, timezone

_FORMAT = "%(asctime)s %(levelname)s %(name)s | %(message)s"

audit = logging.getLogger("quadselmer.audit")


def setup_logging(level: str | int | None = None, log_path: str | None = None) -> None:
    """
    Un handler a stderr con el nivel pedido y, si hay ruta (argumento o
    SELMER_LOG_PATH), otro a archivo que recibe siempre la auditoría.
    """
    level = level or os.getenv("SELMER_LOG_LEVEL", "WARNING")
    log_path = log_path or os.getenv("SELMER_LOG_PATH", "")

    root = logging.getLogger("quadselmer")
    root.setLevel(level)
    for h in list(root.handlers):
        root.removeHandler(h)
        h.close()

    stream = logging.StreamHandler(sys.stderr)
    stream.setLevel(level)
    stream.setFormatter(logging.Formatter(_FORMAT))
    root.addHandler(stream)

    # la auditoría no depende del nivel de consola
    audit.setLevel(logging.INFO)

    if log_path:
        os.makedirs(os.path.dirname(log_path) or ".", exist_ok=True)
        fh = logging.FileHandler(log_path, mode="a", encoding="utf-8")
        fh.setLevel(min(logging.INFO, root.level))
        fh.setFormatter(logging.Formatter(_FORMAT))
        root.addHandler(fh)


def log_field(d: int | str, report) -> None:
    """Una línea de auditoría por campo verificado."""
    failing = sorted(k for k, v in report.checks.items() if v != "pass")
    audit.info(
        f"[{datetime.now(timezone.utc).isoformat()}] d={d} "
        f"h={report.h} h+={report.h_plus} rho={report.rho} rho+={report.rho_plus} "
        f"| no_pass={','.join(failing) or '-'}"
    )
