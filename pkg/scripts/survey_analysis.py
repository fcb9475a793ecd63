#!/usr/bin/env python3
"""Amalgamation and epic-subalgebra surveys over S(Bn), written as JSON rows."""

import json
import sys

import click

from uaforge import catalog
from uaforge.analysis import (
    check_amalgamation,
    check_epic_subalgebras,
    is_isomorphic,
    serialize_reports,
)
from uaforge.core import all_subuniverses, subalgebra


@click.command()
@click.option("--n", default=3, show_default=True, help="atom count for Bn")
@click.option("--out", type=click.Path(dir_okay=False), default="analysis-survey.json",
              show_default=True)
def main(n, out):
    bn = catalog.build(f"Bn?n={n}")
    reps = []
    for s in all_subuniverses(bn):
        sub, _ = subalgebra(bn, s.elements)
        if not any(is_isomorphic(sub, r) for r in reps):
            reps.append(sub)
    members = reps + [catalog.trivial_algebra(bn.signature)]
    amalg_ok, spans = check_amalgamation(members)
    epic_ok, epic = check_epic_subalgebras(bn)
    rows = serialize_reports(spans) + serialize_reports(epic)
    with open(out, "w") as fh:
        json.dump(rows, fh, indent=2)
        fh.write("\n")
    click.echo(
        f"n={n}: {len(spans)} spans (amalgamation {'ok' if amalg_ok else 'FAILED'}), "
        f"{len(epic)} epic instances ({'ok' if epic_ok else 'FAILED'}); wrote {out}"
    )
    sys.exit(0 if amalg_ok and epic_ok else 1)


if __name__ == "__main__":
    main()
