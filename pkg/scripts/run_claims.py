#!/usr/bin/env python3
"""Run the claim registry and write the JSON report to a file."""

import json
import sys

import click

from uaforge import claims


@click.command()
@click.option("--n", default=3, show_default=True, help="atom count for the An/Bn claims")
@click.option("--deep", is_flag=True, help="shorthand for --n 4")
@click.option("--prefix", default=None, help="only run claim ids with this prefix")
@click.option("--out", type=click.Path(dir_okay=False), default="claims-report.json",
              show_default=True)
def main(n, deep, prefix, out):
    if deep:
        n = 4
    results = claims.run_all(prefix=prefix, n=n)
    for r in results:
        click.echo(f"{r.status.upper():4} {r.id:15} {r.elapsed_ms:7d} ms  {r.evidence}")
    report = claims.report_dict(results)
    with open(out, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    click.echo(f"wrote {out}  pass={report['summary']['pass']} fail={report['summary']['fail']}")
    sys.exit(0 if report["summary"]["fail"] == 0 else 1)


if __name__ == "__main__":
    main()
