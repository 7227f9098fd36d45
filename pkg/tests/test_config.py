"""Environment configuration"""

from symloops.config import DEFAULT_SEED, Config


def test_defaults(monkeypatch):
    for name in ("SYMLOOPS_SEED", "SYMLOOPS_LOG_LEVEL", "SYMLOOPS_ORDER_BOUND",
                 "SYMLOOPS_SNF_CHECK_PRIMES", "SYMLOOPS_ACCEPTANCE_FILE"):
        monkeypatch.delenv(name, raising=False)
    c = Config()
    assert c.SEED == DEFAULT_SEED
    assert c.LOG_LEVEL == "WARNING"
    assert c.ORDER_BOUND == 200
    assert c.SNF_CHECK_PRIMES == 2
    assert c.ACCEPTANCE_FILE is None


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("SYMLOOPS_SEED", "7")
    monkeypatch.setenv("SYMLOOPS_LOG_LEVEL", "debug")
    monkeypatch.setenv("SYMLOOPS_ORDER_BOUND", "5000")
    monkeypatch.setenv("SYMLOOPS_ACCEPTANCE_FILE", "/tmp/sizes.yaml")
    monkeypatch.delenv("SYMLOOPS_SNF_CHECK_PRIMES", raising=False)
    c = Config()
    assert c.as_dict() == {
        "seed": 7,
        "log_level": "DEBUG",
        "order_bound": 5000,
        "snf_check_primes": 2,
        "acceptance_file": "/tmp/sizes.yaml",
    }
