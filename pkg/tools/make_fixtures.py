"""Regenerate the Cayley-table fixtures and their verification transcript.

    python3 tools/make_fixtures.py [--out src/snyder_kloop/data]

The K-loop fixture comes from a deterministic search: for G = Z_7^2 x| Z_3 the
order-3 matrices A and the involutions M with M A M = A^-1 are scanned in
lexicographic order, sigma(v, k) = (M v, -k) is checked to be an involutive
automorphism, the factorization G = L H is verified exhaustively, and the first
candidate whose loop is a K-loop but not a group is kept.  The survey of the
nonabelian group of order 21 is recorded as well: all of its involutive
automorphisms lead to the cyclic group Z_7, so it cannot supply the fixture.
"""
import argparse
import json
import pathlib

import numpy as np

from snyder_kloop import finite_hopf as fh


def _write(path: pathlib.Path, data: dict):
    path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


def _suite_records(loop, automorphisms):
    out = {}
    for key, res in fh.fixture_suite(loop, automorphisms).items():
        out[key] = res.to_dict()
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[1]
                                         / "src" / "snyder_kloop" / "data"))
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    # abelian fixture, built through the same factorization with sigma = inversion
    z5 = fh.cyclic_group(5)
    gl5 = fh.build_kloop_from_group(z5, z5.inverse, name="Z5")
    assert np.array_equal(gl5.loop.table, z5.table) and not gl5.precession.any()
    fixtures = {"z5": dict(gl5.loop.to_dict(), automorphisms=[list(range(5))])}

    s3 = fh.symmetric_group(3).as_loop()
    s3 = fh.FiniteLoop(s3.table, s3.identity, "S3")
    fixtures["s3"] = dict(s3.to_dict(), automorphisms=[u.tolist() for u in fh.inner_automorphisms(s3)],
                          elements=[list(g) for g in fh.symmetric_group(3).elements])

    found = fh.search_kloop(p=7, d=2)
    gl = found["construction"]
    loop = fh.FiniteLoop(gl.loop.table, gl.loop.identity, "K-loop of order 21")
    G = found["group"]
    fixtures["kloop21"] = dict(
        loop.to_dict(),
        automorphisms=[u.tolist() for u in fh.conjugation_action(gl)],
        precession=gl.precession.tolist(),
        construction={
            "group": "Z_7^2 x| Z_3, (v, k)(w, l) = (v + A^k w, k + l)",
            "p": found["p"], "A": found["A"].tolist(), "M": found["M"].tolist(),
            "sigma": "(v, k) -> (M v, -k)",
            "carrier": [[list(G.elements[i][0]), G.elements[i][1]] for i in gl.carrier],
            "stabilizer": [[list(G.elements[i][0]), G.elements[i][1]] for i in gl.stabilizer],
        },
        associator_witness=fh.associator_witness(loop),
    )

    z6 = fh.cyclic_group(6).table.copy()
    # swap the intercalate on rows/columns 1 and 4: still a Latin square with identity 0
    z6[[1, 1, 4, 4], [1, 4, 1, 4]] = z6[[1, 1, 4, 4], [4, 1, 4, 1]]
    bad = fh.FiniteLoop(z6, 0, "Z6 with one intercalate swapped")
    fixtures["corrupted_z6"] = dict(bad.to_dict(), corruption="entries (1,1)<->(1,4) and (4,1)<->(4,4) of Z6 swapped")

    transcript = {"search": {"tried": found["tried"]},
                  "order21_survey": fh.order21_involution_survey(),
                  "gyrocommutativity_failure": fh.gyrocommutativity_failure(gl),
                  "fixtures": {}}
    for name, data in fixtures.items():
        _write(out / f"{name}.json", data)
        L = fh.FiniteLoop.from_dict(data)
        transcript["fixtures"][name] = {
            "flags": fh.classify_loop(L),
            "witnesses": {k: w for k, w in fh.identity_failures(L).items() if w is not None},
            "suite": _suite_records(L, data.get("automorphisms")),
        }
    _write(out / "transcript.json", transcript)
    for name, rec in transcript["fixtures"].items():
        verdicts = {k: v["status"] for k, v in rec["suite"].items()}
        print(f"{name:13s} kloop={rec['flags']['kloop']!s:5s} group={rec['flags']['group']!s:5s} {verdicts}")


if __name__ == "__main__":
    main()
