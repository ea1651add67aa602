"""Builds the extension module, imports it and exercises the main entry points.

Usage: python3 python/smoke_test.py [--no-build]
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_and_stage() -> pathlib.Path:
    if "--no-build" not in sys.argv:
        subprocess.run(
            ["cargo", "build", "--release", "-p", "chromapath-py", "--features", "extension-module"],
            cwd=ROOT,
            check=True,
        )
    lib = ROOT / "target" / "release" / "libchromapath.so"
    stage = pathlib.Path(tempfile.mkdtemp(prefix="chromapath-"))
    shutil.copy(lib, stage / "chromapath.so")
    return stage


def main() -> None:
    sys.path.insert(0, str(build_and_stage()))
    import chromapath as cp

    c5 = cp.Digraph.directed_cycle(5)
    chi, coloring = cp.chi(c5)
    assert chi == 3 and len(coloring) == 5, (chi, coloring)
    assert cp.longest_circuit(c5) is not None
    assert cp.handle_decomposition(c5) == [[0, 1, 2, 3, 4]]

    t5 = cp.build_t5()
    assert t5.is_tournament() and len(t5) == 5
    assert cp.find_p4(t5) is None
    assert cp.find_p4(cp.Digraph.transitive_tournament(5)) is not None
    assert cp.Digraph.parse(t5.to_arclist()) == t5

    example = cp.build_elsahili_example()
    assert cp.chi(example)[0] == 5
    cert = cp.find_two_block_certified(example, 2, 2)
    assert cert.found and len(cert.path) == 5, cert
    miss = cp.find_two_block_certified(c5, 2, 2)
    assert not miss.found and miss.coloring is not None, miss

    assert len(cp.k_good_circuit(t5, 3)) >= 3
    try:
        cp.k_good_circuit(example, 3)
    except cp.ChromapathError:
        pass
    else:
        raise AssertionError("k_good_circuit accepted a digraph that is not strongly connected")

    try:
        cp.Digraph(3, [(0, 1), (1, 0)])
    except cp.ChromapathError:
        pass
    else:
        raise AssertionError("digon accepted")

    report = json.loads(cp.run_campaign("grunbaum"))
    assert report["failures"] == [] and report["elapsed_ms"] == 0, report
    assert "thm36" in cp.campaigns()
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
