#!/usr/bin/env python3
"""Regenerate the bundled weight-2 newform fixtures.

Computes, for each level, the Galois orbits of weight-2 newforms with trivial
character, their Fricke (W_N) eigenvalue and analytic rank, using PARI/GP's
modular forms package through the `cypari` wheel. Output files use the same
schema as the client's on-disk cache (cache/newforms/level_<M>.json).

Usage: python3 tools/gen_newform_fixtures.py [--out data/newforms] [--max-level 150]
"""
import argparse
import datetime
import json
import os

import cypari

pari = cypari.pari
SCHEMA_VERSION = 1
EXTRA_LEVELS = [243, 343]


def setup():
    pari.allocatemem(2 * 10**9)
    pari('ranks(mf,F,d)=my(L=lfunmf(mf,F)); '
         'if(d==1, [lfunorderzero(L)], [lfunorderzero(l) | l<-L])')


def orbits(level):
    if level < 11:
        return []
    pari('mf=mfinit([%d,2],0); B=mfeigenbasis(mf); K=mffields(mf)' % level)
    n = int(pari('#B'))
    if n == 0:
        return []
    dims = [int(x) for x in pari('[poldegree(P) | P<-K]')]
    fricke = pari('mfatkineigenvalues(mf,%d)' % level)
    ranks = pari('vector(#B,i,ranks(mf,B[i],poldegree(K[i])))')
    traces = pari('vector(#B,i,vector(20,n,trace(Mod(mfcoef(B[i],n),K[i]))))')
    out = []
    for i in range(n):
        w = sorted({int(x) for x in fricke[i]})
        r = sorted({int(x) for x in ranks[i]})
        if len(w) != 1 or len(r) != 1:
            raise RuntimeError(f"level {level} orbit {i}: inconsistent embeddings {w} {r}")
        out.append({
            "dim": dims[i],
            "fricke_eigenvalue": w[0],
            "analytic_rank": r[0],
            "traces": [int(t) for t in traces[i]],
        })
    # LMFDB orders orbits by dimension, then by trace form.
    out.sort(key=lambda o: (o["dim"], o["traces"]))
    return out


def label_suffix(i):
    s = ""
    i += 1
    while i > 0:
        i, rem = divmod(i - 1, 26)
        s = chr(ord("a") + rem) + s
    return s


def records(level):
    recs = []
    for i, o in enumerate(orbits(level)):
        recs.append({
            "level": level,
            "label": f"{level}.2.a.{label_suffix(i)}",
            "weight": 2,
            "dim": o["dim"],
            # sign of the functional equation; the minus space is -1
            "fricke_sign": -o["fricke_eigenvalue"],
            "fricke_eigenvalue": o["fricke_eigenvalue"],
            "analytic_rank": o["analytic_rank"],
        })
    return recs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/newforms")
    ap.add_argument("--max-level", type=int, default=150)
    args = ap.parse_args()
    setup()
    os.makedirs(args.out, exist_ok=True)
    levels = list(range(1, args.max_level + 1)) + EXTRA_LEVELS
    for level in levels:
        doc = {"schema_version": SCHEMA_VERSION, "level": level, "records": records(level)}
        with open(os.path.join(args.out, f"level_{level}.json"), "w") as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write("\n")
        print(level, len(doc["records"]), flush=True)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "generated": datetime.date.today().isoformat(),
        "generator": "tools/gen_newform_fixtures.py",
        "source": "computed locally with PARI/GP " + str(pari.version()) +
                  " (mfinit/mfeigenbasis/mfatkineigenvalues/lfunorderzero); "
                  "not downloaded from a remote database",
        "query": "weight 2, trivial character, new subspace, levels 1..%d and %s"
                 % (args.max_level, EXTRA_LEVELS),
        "label_convention": "level.2.a.<letters>, orbits sorted by (dimension, trace form); "
                            "matches the public database ordering but is treated as opaque",
        "fricke_sign": "sign of the functional equation = -(Fricke W_N eigenvalue)",
        "analytic_rank": "order of vanishing at s=1 as computed numerically by lfunorderzero",
        "levels": levels,
    }
    with open(os.path.join(args.out, "MANIFEST.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
