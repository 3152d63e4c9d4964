from src.web.web_app import EXAMPLE_PRESENTATION, TraceRingApp


def test_reduce_handler():
    app = TraceRingApp()
    assert app.reduce("(a1 a2^-1)", "T", False) == "t1 t2 - t12"
    traced = app.reduce("(a1 a1)", "T0", True)
    assert traced.splitlines()[-1] == "=> t1^2 - 2"
    assert app.reduce("(a1", "T0", False).startswith("❌")


def test_verify_handler():
    app = TraceRingApp()
    assert app.verify("(a1 a2) + (a1 a2^-1) - (a1)(a2)", "sl2", 5, 7).startswith("✅")
    assert app.verify("t1 - 2", "sl2", 5, 7).startswith("❌")
    assert app.verify("(a1 a2^-1)", "any", 5, 7).startswith("❌")


def test_character_ring_handler():
    app = TraceRingApp()
    generators, basis, verdict = app.character_ring(EXAMPLE_PRESENTATION, "grevlex", "")
    assert generators
    assert "Quotient dimension: INFINITE" in basis
    assert verdict == ""

    _, basis, verdict = app.character_ring("generators: 1\nrelator: a1^2", "lex", "t1^3 - 4 t1")
    assert basis.endswith("Quotient dimension: 2")
    assert verdict.startswith("✅")


def test_character_ring_budget():
    app = TraceRingApp(budget=1)
    _, basis, _ = app.character_ring("generators: 1\nrelator: a1^5", "grevlex", "")
    assert basis.startswith("⚠️")
