from collections import defaultdict

TITLES = {
    1: "SLag axis scan",
    2: "algebraic SLag system",
    3: "involutivity and brackets",
    4: "deformation systems",
    5: "deformation oracle",
    6: "leaf b1",
    7: "leaf closure",
    8: "number theory of M",
    9: "de Rham and h10 tables",
    10: "refined diamonds",
    11: "Fourier-Mukai and supersymmetry",
    12: "property suites",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        xfailed = hasattr(report, "wasxfail")
        ok = report.passed and not xfailed
        _outcomes[crit].append((report.nodeid.split("::")[-1], ok))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, title in TITLES.items():
        runs = _outcomes.get(n)
        if not runs:
            continue
        bad = [name for name, ok in runs if not ok]
        status = "PASS" if not bad else "FAIL"
        tail = f"  (failing: {', '.join(bad)})" if bad else ""
        tr.write_line(f"[{status}] {n:>2}. {title}{tail}")
