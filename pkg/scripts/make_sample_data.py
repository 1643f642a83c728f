"""Regenerate everything under sample_data/ deterministically.

Usage: python scripts/make_sample_data.py [outdir]

The outputs are committed; this script exists so they can be audited
and rebuilt from scratch. Seeds are fixed, so reruns are byte-stable.
"""

import os
import sys
from datetime import date, timedelta

import numpy as np
from scipy.ndimage import gaussian_filter

from fastimd import GrayImage, write_image
from fastimd.formats import atomic_write_bytes


def make_stock(seed=2, n=1260, start=date(2003, 1, 6)):
    """Five years of synthetic daily closes on a weekday calendar.

    A random walk in log price with seasonal-ish cycles layered on,
    rounded to cents. Returns (dates, close).
    """
    rng = np.random.default_rng(seed)
    days = []
    d = start
    while len(days) < n:
        if d.weekday() < 5:
            days.append(d)
        d += timedelta(days=1)
    steps = rng.normal(0.0003, 0.012, n)
    k = np.arange(n)
    cyc = (0.10 * np.sin(2 * np.pi * k / 21) + 0.12 * np.sin(2 * np.pi * k / 63)
           + 0.08 * np.sin(2 * np.pi * k / 250) + 0.05 * np.sin(2 * np.pi * k / 5.2))
    log_close = (np.log(28.0) + np.cumsum(steps)
                 + 0.15 * np.sin(2 * np.pi * k / 500) + cyc * 0.3)
    return days, np.round(np.exp(log_close), 2)


def write_stock_csv(path):
    days, close = make_stock()
    rng = np.random.default_rng(20)
    gap = rng.normal(0, 0.004, len(close))
    spread = np.abs(rng.normal(0.008, 0.003, len(close)))
    open_ = np.round(close * (1 + gap), 2)
    high = np.round(np.maximum(open_, close) * (1 + spread), 2)
    low = np.round(np.minimum(open_, close) * (1 - spread), 2)
    volume = rng.integers(400_000, 9_000_000, len(close))
    lines = ["Date,Open,High,Low,Close,Adj Close,Volume"]
    for i, day in enumerate(days):
        lines.append(f"{day.isoformat()},{open_[i]:.2f},{high[i]:.2f},"
                     f"{low[i]:.2f},{close[i]:.2f},{close[i]:.2f},{volume[i]}")
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


def write_two_sines_csv(path):
    t = np.linspace(0.0, 10.0, 2001)
    v = np.sin(40 * t) + np.sin(5 * t) + 0.2 * t
    lines = ["Time,Value"]
    lines += [f"{float(ti)!r},{float(vi)!r}" for ti, vi in zip(t, v)]
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


def make_bumps():
    yy, xx = np.mgrid[0:64, 0:64].astype(float)
    rng = np.random.default_rng(11)
    pixels = np.full((64, 64), 90.0)
    for _ in range(5):
        cx, cy = rng.uniform(10, 54, 2)
        width = rng.uniform(10, 20)
        amp = rng.uniform(30, 100)
        pixels += amp * np.exp(-(((xx - cx) ** 2 + (yy - cy) ** 2) / (2 * width ** 2)))
    return pixels


def make_texture(seed, sigma):
    rng = np.random.default_rng(seed)
    smooth = gaussian_filter(rng.normal(0, 1, (64, 64)), sigma, mode="reflect")
    return 128 + 90 * smooth / np.max(np.abs(smooth))


def main(outdir="sample_data"):
    os.makedirs(outdir, exist_ok=True)
    write_stock_csv(os.path.join(outdir, "stock_daily.csv"))
    write_two_sines_csv(os.path.join(outdir, "two_sines.csv"))
    write_image(GrayImage(make_bumps()), os.path.join(outdir, "bumps.pgm"))
    write_image(GrayImage(make_texture(9, 2.5)), os.path.join(outdir, "texture_fine.pgm"))
    write_image(GrayImage(make_texture(13, 4.0)), os.path.join(outdir, "texture_soft.pgm"))
    print(f"wrote 5 files to {outdir}/")


if __name__ == "__main__":
    main(*sys.argv[1:])
