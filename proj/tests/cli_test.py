#!/usr/bin/env python3
"""Black-box checks of the fdepth command line tool."""

import json
import math
import struct
import subprocess
import sys
import tempfile
from pathlib import Path

FDEPTH = sys.argv[1]
FAILURES = []


def run(*args, expect=0):
    proc = subprocess.run([FDEPTH, *args], capture_output=True, text=False)
    if proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, expected {expect}\n"
            f"stderr: {proc.stderr.decode(errors='replace')}"
        )
    return proc


def check(name, fn):
    try:
        fn()
        print(f"ok  {name}")
    except AssertionError as exc:
        FAILURES.append(name)
        print(f"FAIL {name}: {exc}")


def parse_csv(text):
    lines = [l for l in text.strip().splitlines() if l]
    header = lines[0].split(",")
    rows = [l.split(",") for l in lines[1:]]
    return header, rows


tmp = Path(tempfile.mkdtemp(prefix="fdepth_cli_"))
d3 = tmp / "d3.csv"
d3.write_text("1,1,1,1\n2,2,2,2\n3,3,3,3\n")

col1 = tmp / "col1.csv"
col1.write_text("0\n1\n2\n3\n4\n")


def t_tau():
    out = run("tau", str(d3), "--probs", "0.5").stdout
    doc = json.loads(out)
    assert doc["probs"] == [0.5], doc
    assert doc["quantiles"] == [1.0], doc
    doc = json.loads(run("tau", str(d3), "--probs", "0,1").stdout)
    assert doc["quantiles"] == [1.0, 2.0], doc
    doc = json.loads(run("tau", str(d3), "--probs", "0.5", "--stats").stdout)
    assert sorted(doc["stats"]) == [1.0, 1.0, 2.0], doc


def t_depth_hr():
    header, rows = parse_csv(run("depth", str(d3), "--method", "hr").stdout.decode())
    assert header == ["label", "depth", "rank"], header
    values = [float(r[1]) for r in rows]
    ranks = [int(r[2]) for r in rows]
    expected = [1 / 3, 2 / 3, 1 / 3]
    assert all(abs(a - b) < 1e-15 for a, b in zip(values, expected)), values
    assert ranks == [2, 1, 3], ranks


def t_depth_local_json():
    out = run("depth", str(d3), "--method", "mhr", "--tau", "1.5", "--json").stdout
    doc = json.loads(out)
    assert doc["method"] == "MHR", doc
    expected = [1 / 3, 2 / 3, 1 / 3]
    assert all(
        abs(a - b) < 1e-15 for a, b in zip(doc["local_values"], expected)
    ), doc["local_values"]
    assert doc["tau"] == [1.5] * 4, doc


def t_depth_out_file():
    dest = tmp / "depth.csv"
    run("depth", str(d3), "--tau", "0.5", "--out", str(dest))
    header, rows = parse_csv(dest.read_text())
    assert header == ["label", "depth", "local_depth", "rank", "local_rank"]
    assert len(rows) == 3


def t_depth_finite():
    out = run("depth", str(col1), "--finite", "--tau", "1").stdout.decode()
    header, rows = parse_csv(out)
    assert header == ["label", "local_depth", "rank"], header
    assert abs(float(rows[2][1]) - 0.4) < 1e-15, rows
    run("depth", str(d3), "--finite", "--tau", "1", expect=2)


def t_errors():
    proc = run("depth", str(tmp / "nope.csv"), expect=2)
    assert b"nope.csv" in proc.stderr, proc.stderr
    run("depth", str(d3), "--tau", "-1", expect=2)
    run("tau", str(d3), "--probs", "1.5", expect=2)
    bad = tmp / "bad.csv"
    bad.write_text("1,2\n3,NA\n")
    proc = run("depth", str(bad), expect=2)
    assert b"row 2" in proc.stderr, proc.stderr


def t_ddplot():
    out = run("ddplot", str(d3), "--tau", "100").stdout.decode()
    header, rows = parse_csv(out)
    assert header == ["label", "depth", "local_depth"], header
    for r in rows:
        assert r[1] == r[2], r
    run("ddplot", str(d3), expect=2)  # tau is mandatory here


def t_similarity():
    proc = run("similarity", str(d3), "--method", "hr", "--tau", "1")
    assert b"warning" in proc.stderr, proc.stderr
    run("similarity", str(d3), "--method", "localmhr", expect=2)

    out = run("similarity", str(d3), "--method", "localmhr", "--tau", "1",
              "--dissimilarity").stdout.decode()
    header, rows = parse_csv(out)
    mat = [[float(x) for x in r[1:]] for r in rows]
    for i in range(3):
        assert mat[i][i] == 0.0, mat
        for j in range(3):
            assert mat[i][j] == mat[j][i], mat


def t_similarity_binary():
    dest = tmp / "sim.bin"
    run("similarity", str(d3), "--method", "localmhr", "--tau", "1",
        "--binary", "--out", str(dest))
    raw = dest.read_bytes()
    assert raw[:8] == b"FDSIMM01", raw[:8]
    (n,) = struct.unpack("<Q", raw[8:16])
    assert n == 3, n
    vals = struct.unpack("<9d", raw[16:])
    assert abs(vals[4] - 2 / 3) < 1e-15, vals  # diagonal of the middle curve


def t_streaming_matches():
    whole = run("similarity", str(d3), "--method", "localmhr", "--tau", "1").stdout
    blocked = run("similarity", str(d3), "--method", "localmhr", "--tau", "1",
                  "--block-rows", "1").stdout
    assert whole == blocked


def t_cluster():
    # Two well separated groups of constant curves.
    data = tmp / "groups.csv"
    rows = ["0.0,0.1,0.0,0.1", "0.1,0.0,0.1,0.0", "0.05,0.05,0.0,0.1",
            "5.0,5.1,5.0,5.1", "5.1,5.0,5.1,5.0", "5.05,5.05,5.0,5.1"]
    data.write_text("\n".join(rows) + "\n")
    prefix = str(tmp / "cl")
    proc = run("cluster", str(data), "--tau", "0.5", "--k", "1:2",
               "--out-prefix", prefix)
    assert b"warning: k=1" in proc.stderr, proc.stderr
    assert b"mean_silhouette=" in proc.stdout, proc.stdout
    dendro = json.loads(Path(prefix + ".dendrogram.json").read_text())
    assert dendro["n"] == 6 and len(dendro["merges"]) == 5, dendro
    _, labels1 = parse_csv(Path(prefix + ".k1.labels.csv").read_text())
    assert all(r[1] == "1" for r in labels1), labels1
    _, labels2 = parse_csv(Path(prefix + ".k2.labels.csv").read_text())
    got = [r[1] for r in labels2]
    assert got[:3] == ["1"] * 3 and got[3:] == ["2"] * 3, got
    header, sil = parse_csv(Path(prefix + ".k2.silhouette.csv").read_text())
    assert header == ["label", "cluster", "width"], header
    assert len(sil) == 6

    run("cluster", str(data), "--tau", "0.5", "--k", "0", expect=2)
    run("cluster", str(data), "--tau", "0.5", "--k", "7", expect=2)


def t_threads_stable():
    a = run("--threads", "1", "depth", str(d3), "--tau", "1").stdout
    b = run("--threads", "3", "depth", str(d3), "--tau", "1").stdout
    assert a == b


def t_consistency():
    out = run("consistency", "--sizes", "200", "--replicates", "2",
              "--json").stdout
    doc = json.loads(out)
    assert abs(doc["population_value"] - 0.1165162) < 1e-5, doc
    assert len(doc["mean_abs_error"]) == 1, doc
    assert doc["mean_abs_error"][0] < 0.2, doc
    table = run("consistency", "--sizes", "200", "--replicates", "2").stdout
    assert b"population local HR depth" in table, table


def t_usage():
    run(expect=2)  # a subcommand is required
    run("depth", expect=2)  # input is required
    proc = run("--help", expect=0)
    assert b"tau" in proc.stdout and b"cluster" in proc.stdout


for name, fn in sorted((k, v) for k, v in list(globals().items())
                       if k.startswith("t_")):
    check(name, fn)

if FAILURES:
    print(f"{len(FAILURES)} CLI checks failed: {FAILURES}")
    sys.exit(1)
print("all CLI checks passed")
