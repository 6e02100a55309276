#!/usr/bin/env python3
"""Plot the mean battery state of charge per mode from a soc_trace.tsv."""
import argparse
import csv

import matplotlib.pyplot as plt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("trace", help="soc_trace.tsv written by `res5g report`")
    ap.add_argument("-o", "--output", default="soc_trace.png")
    args = ap.parse_args()

    with open(args.trace) as f:
        rows = [r for r in csv.reader(f, delimiter="\t") if r and not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    steps = [int(r[0]) for r in data]

    fig, ax = plt.subplots(figsize=(10, 4))
    for col, mode in enumerate(header[1:], start=1):
        ax.plot(steps, [float(r[col]) for r in data], label=mode)
    ax.set_xlabel("step [h]")
    ax.set_ylabel("mean state of charge")
    ax.set_ylim(0, 1.05)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
