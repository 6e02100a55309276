#!/usr/bin/env python3
"""Writes the bundled four-day synthetic weather table.

Each day is a smooth diurnal profile with a little seeded jitter:
  vernal  - mild, sunny, steady moderate wind
  summer  - hot, long and bright, gale above the turbine cut-out
  autumn  - cool, hazy, calm (below cut-in)
  winter  - frost, short low sun, strong wind
"""
import argparse
import math
import random

HEADER = "step,temperature_C,wind_mps,irradiance_Wm2,pressure_Pa"

DAYS = [
    # label, t_mean, t_amp, wind_mean, wind_amp, irr_peak, sunrise, sunset, pressure
    ("vernal_equinox", 9.0, 5.0, 8.0, 2.5, 680.0, 6.0, 18.0, 101600.0),
    ("summer_solstice", 27.0, 6.0, 18.0, 1.5, 920.0, 4.0, 21.0, 101200.0),
    ("autumn_equinox", 11.0, 4.0, 2.0, 0.6, 480.0, 6.0, 18.0, 101900.0),
    ("winter_solstice", -3.0, 2.0, 11.5, 2.0, 240.0, 8.0, 16.0, 100800.0),
]


def rows(seed):
    rng = random.Random(seed)
    step = 0
    for _, t_mean, t_amp, w_mean, w_amp, irr_peak, rise, set_, pressure in DAYS:
        for hour in range(24):
            t = t_mean + t_amp * math.sin(2 * math.pi * (hour - 9) / 24) + rng.uniform(-0.3, 0.3)
            w = w_mean + w_amp * math.sin(2 * math.pi * (hour - 7) / 24) + rng.uniform(-0.3, 0.3)
            mid = hour + 0.5
            if rise < mid < set_:
                g = irr_peak * math.sin(math.pi * (mid - rise) / (set_ - rise)) * rng.uniform(0.95, 1.0)
            else:
                g = 0.0
            p = pressure + rng.uniform(-50, 50)
            yield step, t, max(w, 0.0), g, p
            step += 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--out", default="data/weather/seasons_synthetic.csv")
    args = ap.parse_args()
    with open(args.out, "w") as f:
        f.write("# synthetic seasonal days: " + ", ".join(d[0] for d in DAYS) + "\n")
        f.write(HEADER + "\n")
        for step, t, w, g, p in rows(args.seed):
            f.write(f"{step},{t:.2f},{w:.2f},{g:.1f},{p:.0f}\n")


if __name__ == "__main__":
    main()
