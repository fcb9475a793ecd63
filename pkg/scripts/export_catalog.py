#!/usr/bin/env python3
"""Dump every catalog object to files (algebras as JSON, formulas as text)."""

import json
from pathlib import Path

import click

from uaforge import catalog
from uaforge.core import FiniteAlgebra, save_algebra
from uaforge.logic import format_formula
from uaforge.partitions import Partition


def _write(outdir: Path, cid: str, obj) -> str:
    stem = cid.replace("?", "_").replace("&", "_").replace("=", "")
    if isinstance(obj, FiniteAlgebra):
        path = outdir / f"{stem}.json"
        save_algebra(obj, path)
    elif isinstance(obj, Partition):
        path = outdir / f"{stem}.json"
        path.write_text(
            json.dumps({"size": obj.size, "blocks": obj.to_blocks_json()}, indent=2) + "\n"
        )
    else:  # (formula, display names)
        formula, names = obj
        path = outdir / f"{stem}.txt"
        path.write_text(format_formula(formula, names) + "\n")
    return path.name


@click.command()
@click.option("--n", default=3, show_default=True, help="atom count for An/Bn/phi")
@click.option("--outdir", type=click.Path(file_okay=False), default="catalog-export",
              show_default=True)
def main(n, outdir):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    ids = [cid for cid in catalog.catalog_ids() if "?" not in cid and "N" not in cid]
    ids += [f"An?n={n}", f"Bn?n={n}"]
    ids += [f"phi?k={k}&n={n}" for k in range(1, n)]
    for cid in ids:
        name = _write(out, cid, catalog.build(cid))
        click.echo(f"{cid:16} -> {name}")


if __name__ == "__main__":
    main()
