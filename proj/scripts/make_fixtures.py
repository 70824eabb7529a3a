#!/usr/bin/env python3
"""Regenerate the bundled fixture dataset under data/fixtures/.

The fixtures are synthetic but shaped like the real inputs: BTS-style
on-time flight legs, a daily price series, a daily driving-trend index and
two daily COVID count series, all spanning a weekly analysis window
(2020-01-13 .. 2020-08-25) and a monthly window (2018-01 .. 2020-08) with a
pronounced mobility/price dip in spring 2020. Generation is seeded, so the
committed files are reproducible.
"""

import math
import random
from datetime import date, timedelta
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixtures"

AIRPORTS = [
    ("ATL", 33.6407, -84.4277),
    ("LAX", 33.9416, -118.4085),
    ("ORD", 41.9742, -87.9073),
    ("DFW", 32.8998, -97.0403),
    ("DEN", 39.8561, -104.6737),
    ("JFK", 40.6413, -73.7781),
    ("SFO", 37.6213, -122.3790),
    ("SEA", 47.4502, -122.3088),
    ("MIA", 25.7959, -80.2870),
    ("PHX", 33.4373, -112.0078),
    ("BOS", 42.3656, -71.0096),
    ("IAH", 29.9902, -95.3368),
]

WEEKLY_START = date(2020, 1, 13)
WEEKLY_END = date(2020, 8, 25)
MONTHLY_START = date(2018, 1, 1)
MONTHLY_END = date(2020, 8, 25)


def daterange(start, end):
    d = start
    while d <= end:
        yield d
        d += timedelta(days=1)


def sundays(start, end):
    d = start + timedelta(days=(6 - start.weekday()) % 7)
    while d <= end:
        yield d
        d += timedelta(days=7)


def month_15ths(start, end):
    y, m = start.year, start.month
    while True:
        mid = date(y, m, 15)
        if mid > end:
            return
        if mid >= start:
            yield mid
        m += 1
        if m > 12:
            m, y = 1, y + 1


def covid_factor(d):
    """Mobility multiplier: 1 before March 2020, collapse, partial recovery."""
    if d < date(2020, 3, 8):
        return 1.0
    if d < date(2020, 6, 1):
        depth = min(1.0, (d - date(2020, 3, 8)).days / 21.0)
        return 1.0 - 0.65 * depth
    return 0.35 + min(0.25, (d - date(2020, 6, 1)).days / 240.0)


def write_flights(rng):
    sample_days = sorted(set(sundays(WEEKLY_START, WEEKLY_END)) | set(month_15ths(MONTHLY_START, MONTHLY_END)))
    noise_days = [date(2019, 7, 3), date(2020, 2, 5), date(2020, 4, 1)]
    rows = ["FL_DATE,ORIGIN,DEST,CANCELLED"]
    for d in sample_days + noise_days:
        base = 70 if d >= date(2020, 1, 1) else 62
        legs = max(8, int(base * covid_factor(d) + rng.uniform(-4, 4)))
        for _ in range(legs):
            a, b = rng.sample(AIRPORTS, 2)
            cancelled = "1.00" if rng.random() < 0.03 else "0.00"
            rows.append(f"{d.isoformat()},{a[0]},{b[0]},{cancelled}")
    # Two legs touching an airport missing from the registry.
    rows.append("2020-02-05,ZZZ,ATL,0.00")
    rows.append("2020-02-05,ATL,ZZZ,0.00")
    (OUT / "flights.csv").write_text("\n".join(rows) + "\n")


def write_airports():
    rows = ["code,latitude,longitude"]
    for code, lat, lon in AIRPORTS:
        rows.append(f"{code},{lat},{lon}")
    (OUT / "airports.csv").write_text("\n".join(rows) + "\n")


def write_prices(rng):
    rows = ["date,price"]
    for i, d in enumerate(daterange(MONTHLY_START, MONTHLY_END)):
        if d.weekday() >= 5:  # market closed on weekends
            continue
        base = 55.0 + 8.0 * math.sin(2 * math.pi * i / 365.0) + 3.0 * math.sin(2 * math.pi * i / 28.0)
        if date(2020, 3, 1) <= d <= date(2020, 5, 15):
            crash = 1.0 - 0.9 * min(1.0, (d - date(2020, 3, 1)).days / 45.0)
            base *= max(crash, 0.06)
        if date(2020, 5, 16) <= d:
            base *= 0.55 + min(0.3, (d - date(2020, 5, 16)).days / 300.0)
        price = base + rng.gauss(0.0, 1.2)
        if d == date(2020, 4, 20):
            price = -4.5  # the famously negative settlement day
        rows.append(f"{d.isoformat()},{price:.4f}")
    (OUT / "wti_daily.csv").write_text("\n".join(rows) + "\n")


def write_driving(rng):
    rows = ["date,index"]
    for d in daterange(WEEKLY_START, WEEKLY_END):
        weekday_bump = 10.0 * math.sin(2 * math.pi * d.weekday() / 7.0)
        level = 100.0 * covid_factor(d) + weekday_bump + rng.gauss(0.0, 3.0)
        rows.append(f"{d.isoformat()},{max(level, 5.0):.3f}")
    (OUT / "driving_daily.csv").write_text("\n".join(rows) + "\n")


def write_covid(rng):
    cases = ["date,value"]
    deaths = ["date,value"]
    for d in daterange(WEEKLY_START, WEEKLY_END):
        t = (d - WEEKLY_START).days
        wave1 = 32000.0 * math.exp(-((t - 95) ** 2) / (2 * 18.0**2))
        wave2 = 52000.0 * math.exp(-((t - 190) ** 2) / (2 * 22.0**2))
        c = max(0.0, wave1 + wave2 + (rng.gauss(0.0, 400.0) if t > 45 else 0.0))
        cases.append(f"{d.isoformat()},{c:.1f}")
        lag = max(0, t - 12)
        dw1 = 2100.0 * math.exp(-((lag - 95) ** 2) / (2 * 20.0**2))
        dw2 = 1100.0 * math.exp(-((lag - 190) ** 2) / (2 * 24.0**2))
        deaths.append(f"{d.isoformat()},{max(0.0, dw1 + dw2 + (rng.gauss(0.0, 30.0) if t > 50 else 0.0)):.1f}")
    (OUT / "covid_cases.csv").write_text("\n".join(cases) + "\n")
    (OUT / "covid_deaths.csv").write_text("\n".join(deaths) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20200113)
    write_flights(rng)
    write_airports()
    write_prices(rng)
    write_driving(rng)
    write_covid(rng)
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
