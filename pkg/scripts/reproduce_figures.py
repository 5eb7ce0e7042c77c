"""Write the CSV series for the five parameter sweeps (pure/mixed, 2x2/3x3).

    python scripts/reproduce_figures.py --outdir figures
"""

import argparse
from pathlib import Path

from witness_bounds.cli import render_csv, sweep_rows

SERIES = [
    ("fig1_pure2x2.csv", "pure2x2", None),
    ("fig2_mixed2x2_x0.1.csv", "mixed2x2", 0.1),
    ("fig3_mixed2x2_x0.01.csv", "mixed2x2", 0.01),
    ("fig4_mixed3x3_x0.1.csv", "mixed3x3", 0.1),
    ("fig4_mixed3x3_x0.01.csv", "mixed3x3", 0.01),
    ("fig5_pure3x3.csv", "pure3x3", None),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    parser.add_argument("--a-min", type=float, default=0.0)
    parser.add_argument("--a-max", type=float, default=2.0)
    parser.add_argument("--steps", type=int, default=201)
    parser.add_argument("--plot", action="store_true", help="also save PNGs (needs matplotlib)")
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, family, x in SERIES:
        rows = sweep_rows(family, x, args.a_min, args.a_max, args.steps)
        (args.outdir / name).write_text(render_csv(rows))
        print(f"wrote {args.outdir / name}")
        if args.plot:
            import matplotlib

            matplotlib.use("Agg")
            import matplotlib.pyplot as plt

            fig, ax = plt.subplots(figsize=(5, 3.5))
            a = [r[0] for r in rows]
            for col, label in ((1, "pure-state bound"), (2, "correlation bound"), (3, "two-qubit bound")):
                if rows[0][col] is not None:
                    ax.plot(a, [r[col] for r in rows], label=label)
            ax.set_xlabel("a")
            ax.set_ylabel("lower bound")
            ax.legend()
            fig.tight_layout()
            fig.savefig(args.outdir / name.replace(".csv", ".png"), dpi=120)
            plt.close(fig)


if __name__ == "__main__":
    main()
