import logging
import os

import pytest

from quadselmer import cache
from quadselmer.config import Config, load_config
from quadselmer.errors import UsageError
from quadselmer.field import make_field, mod4_data
from quadselmer.logger import log_field, setup_logging
from quadselmer.report import FieldReport
from quadselmer.verify import verify_field


def test_defaults(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)  # sin .env
    cfg = load_config()
    assert cfg == Config()
    assert cfg.prime_bound(40) == 200 * 40


def test_environment_and_overrides(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SELMER_SEED", "11")
    monkeypatch.setenv("SELMER_FORMAT", " JSON ")
    monkeypatch.setenv("SELMER_PRIME_NORM_BOUND", "900")
    cfg = load_config(seed=None, fuzz_trials=3)
    assert cfg.seed == 11
    assert cfg.output_format == "json"
    assert cfg.fuzz_trials == 3
    assert cfg.prime_bound(-4) == 900
    # el override explícito gana al entorno
    assert load_config(seed=2).seed == 2


def test_dotenv_file(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".env").write_text("SELMER_FUZZ_HEIGHT=17\n", encoding="utf-8")
    try:
        assert load_config().fuzz_height == 17
    finally:
        # load_dotenv escribe en os.environ
        os.environ.pop("SELMER_FUZZ_HEIGHT", None)


@pytest.mark.parametrize(
    "overrides",
    [
        {"output_format": "xml"},
        {"parallelism": 0},
        {"fuzz_trials": -1},
        {"prime_norm_bound": 0},
        {"seed": "abc"},
    ],
)
def test_invalid_config(overrides, monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(UsageError):
        load_config(**overrides)


def test_config_is_frozen():
    with pytest.raises(ValueError):
        Config().seed = 4


# ======================================================
# cache por campo
# ======================================================
def test_field_context_builds_once(clean_cache):
    F = make_field(10)
    calls = []

    def build():
        calls.append(1)
        return 42

    ctx = cache.field_context(F)
    assert ctx.get_or_create("x", build) == 42
    assert ctx.get_or_create("x", build) == 42
    assert len(calls) == 1
    assert cache.field_context(make_field(10)) is ctx
    assert ctx.has("x")


def test_cache_clear(clean_cache):
    ctx = cache.field_context(make_field(3))
    ctx.get_or_create("y", lambda: 1)
    cache.clear()
    assert not cache.field_context(make_field(3)).has("y")


# ======================================================
# logging
# ======================================================
def test_setup_logging_replaces_handlers(reset_logging):
    setup_logging("INFO")
    setup_logging("DEBUG")
    root = logging.getLogger("quadselmer")
    assert len(root.handlers) == 1
    assert root.level == logging.DEBUG


def test_audit_line(caplog):
    rep = FieldReport(d=10, disc=40, r=2, s=0, n=2, h=2, h_plus=2, rho=1, rho_plus=1,
                      checks={"tsel": "pass", "clp": "inconclusive"})
    with caplog.at_level(logging.INFO, logger="quadselmer.audit"):
        log_field(10, rep)
    assert "d=10" in caplog.text
    assert "no_pass=clp" in caplog.text


@pytest.fixture
def reset_logging():
    yield
    root = logging.getLogger("quadselmer")
    for h in list(root.handlers):
        root.removeHandler(h)
        h.close()


@pytest.mark.parametrize("level", [None, "WARNING", "ERROR"])
def test_audit_file_is_written_at_any_console_level(level, monkeypatch, tmp_path, cfg, reset_logging):
    path = tmp_path / "logs" / "audit.log"
    monkeypatch.setenv("SELMER_LOG_PATH", str(path))
    setup_logging(level)
    verify_field(-5, cfg)
    for h in logging.getLogger("quadselmer").handlers:
        h.flush()
    text = path.read_text(encoding="utf-8")
    assert "d=-5" in text
    assert "h=2" in text


def test_console_stays_quiet_at_default_level(capsys, cfg, reset_logging):
    setup_logging()
    verify_field(-5, cfg)
    assert "no_pass=" not in capsys.readouterr().err


def test_mod4_data_lives_in_field_context(clean_cache):
    F = make_field(34)
    data = mod4_data(F)
    assert cache.field_context(F).has("mod4")
    assert mod4_data(F) is data
    cache.clear()
    assert not cache.field_context(F).has("mod4")


def test_registry_evicts_oldest_field(clean_cache, monkeypatch):
    monkeypatch.setattr(cache, "MAX_FIELDS", 2)
    first = make_field(2)
    mod4_data(first)
    for d in (3, 5):
        mod4_data(make_field(d))
    # el contexto de d=2 fue expulsado junto con su memo
    assert not cache.field_context(first).has("mod4")
