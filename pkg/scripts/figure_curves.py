"""Write loss, gradient, weight and log10-weight curves as TSV files.

    python scripts/figure_curves.py outdir/ [--alphas 2,1,0,-2,-inf]
"""

import argparse
from pathlib import Path

from robustloss.cli import SweepSpec, render_sweep
from robustloss.loss_core import power_param

FIGURES = {
    "loss.tsv": dict(quantity="loss"),
    "gradient.tsv": dict(quantity="gradient"),
    "weight.tsv": dict(quantity="weight"),
    "log10_weight.tsv": dict(quantity="weight", log10=True),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--alphas", default="2,1,0,-2,-inf")
    args = ap.parse_args()
    alphas = tuple(power_param(a) for a in args.alphas.split(","))
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, kw in FIGURES.items():
        (args.outdir / name).write_text(render_sweep(SweepSpec(alphas=alphas, **kw)))
        print(args.outdir / name)


if __name__ == "__main__":
    main()
