import pytest

_ACCEPTANCE = []


class AcceptanceRecorder:
    """Collects sub-check outcomes for one acceptance criterion."""

    def __init__(self, label):
        self.label = label
        self.checks = []

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [f"{n}: {d}" for n, ok, d in self.checks if not ok]


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    rec = AcceptanceRecorder(marker.args[0] if marker else request.node.name)
    yield rec
    _ACCEPTANCE.append(rec)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for rec in sorted(_ACCEPTANCE, key=lambda r: r.label):
        n_ok = sum(ok for _, ok, _ in rec.checks)
        status = "PASS" if rec.passed else "FAIL"
        tr.write_line(f"{status}  {rec.label}  ({n_ok}/{len(rec.checks)} checks)")
        for line in rec.failures():
            tr.write_line(f"        failed: {line}")
