"""Smoke tests for the python bindings."""

import dcosets


def test_roots():
    r = dcosets.roots("B2")
    assert r["rank"] == 2
    assert r["roots"] == 8
    assert r["positive"] == 4


def test_weyl_min_reps():
    w = dcosets.weyl("A2", A="", C="1")
    assert w["order"] == 6
    assert w["count"] == 3
    assert "e" in w["min_reps"]


def test_isometries():
    assert dcosets.isometries("A2")["count"] == 7
    assert dcosets.isometries("A1", "G2")["count"] == 3


def test_classify():
    r = dcosets.classify("A2", a="full-id", c="full-id")
    assert len(r["parameters"]) == 1
    r = dcosets.classify("A2", a="empty", c="empty")
    assert len(r["parameters"]) == 36


def test_diagonal_census():
    r = dcosets.run("SL2", q1=3, a="full-id", c="full-id", K="diag", L="diag",
                    verify="main1")
    assert r["pass"]
    assert r["totals"]["brute_classes"] == 7
    assert r["parameters"][0]["j_orbit_count"] == 7


def test_bruhat_ybe():
    r = dcosets.run("SL2", q1=3, a="empty", c="empty", K="graph-zfull",
                    L="graph-zfull", verify="ybe")
    assert r["pass"]
    sizes = {row["N"] for row in r["checks"]["ybe"]["instances"]}
    assert 9 in sizes


def test_tsv_mirror():
    r = dcosets.run("SL2", q1=2, a="empty", c="empty", K="graph-zfull",
                    L="graph-zfull", verify="main1")
    tsv = dcosets.report_tsv(dcosets.run_json(
        "SL2", "", 2, 0, "empty", "empty", "graph-zfull", "graph-zfull", "main1", 0))
    lines = tsv.strip().splitlines()
    assert lines[0].startswith("v1\tv2")
    assert len(lines) == 1 + len(r["parameters"])
