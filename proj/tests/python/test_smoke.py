"""Smoke test for the compiled extension module."""

import os
import sys
import tempfile

import _ehc as ehc


def main():
    t = ehc.Tournament.transitive(5)
    assert t.size() == 5
    assert t.has_arc(0, 4)

    size, witness = ehc.tr_exact(ehc.Tournament.three_cycle())
    assert size == 2 and len(witness) == 2

    ramsey = ehc.ramsey_transitive(ehc.sample_tournament(16, 42))
    assert len(ramsey) >= 5

    text = ehc.to_text(t)
    assert ehc.from_text(text) == t

    cyc = ehc.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert ehc.is_epsilon_critical(cyc, 7, 10)
    assert not ehc.is_epsilon_critical(ehc.Tournament.transitive(3), 7, 10)

    assert ehc.is_canonical_k6(ehc.Tournament.canonical_k6(), list(range(6)))

    w = ehc.recognize(cyc, "galaxy")
    assert w is not None

    violations = ehc.verify_smooth(t, [[0, 1], [3, 4]], [0, 0], 2, 5, 0, 1)
    assert violations == []

    base = ehc.from_text(ehc.to_text(ehc.Tournament.transitive(4)))
    # middle star on {0,1,2} after reversing two arcs
    n = ehc.from_arcs(3, [(1, 0), (2, 1), (0, 2)])
    key_text, base_vertices = ehc.build_key(
        n, [0, 1, 2], ehc.from_arcs(3, [(1, 0), (2, 0), (2, 1)]), [0, 1, 2]
    )
    assert len(base_vertices) == 3
    assert ehc.from_text(key_text).size() >= 3
    del base

    with tempfile.TemporaryDirectory() as d:
        out = os.path.join(d, "run.jsonl")
        cfg = f"sizes 4 5\nsamples 2\nseed 11\noutput {out}\n"
        lines1, eps1 = ehc.run_experiment(cfg)
        lines2, eps2 = ehc.run_experiment(cfg)
        assert lines1 == lines2 and eps1 == eps2
        assert len(lines1) == 4

    print("python smoke: ok")


if __name__ == "__main__":
    sys.exit(main())
