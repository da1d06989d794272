"""Frozen gold tables and reference constants shared across tests."""

from __future__ import annotations

from chartground.tables import Table

# Yearly ratings table (5 columns, 3 rows).
RATINGS_TABLE = Table(
    headers=("Year", "RDS 18_49", "RDS Total", "TSN 18_49", "TSN Total"),
    rows=[
        (2014.0, 58000.0, 191000.0, 209000.0, 660000.0),
        (2015.0, 63000.0, 201000.0, 157000.0, 535000.0),
        (2016.0, 41000.0, 142000.0, 170000.0, 553000.0),
    ],
)

RATINGS_MARKDOWN = """\
| Year | RDS 18_49 | RDS Total | TSN 18_49 | TSN Total |
|------|-----------|-----------|-----------|-----------|
| 2014 | 58,000    | 191,000   | 209,000   | 660,000   |
| 2015 | 63,000    | 201,000   | 157,000   | 535,000   |
| 2016 | 41,000    | 142,000   | 170,000   | 553,000   |
"""

# Polar bond-price table (3 columns, 10 rows).
POLAR_TABLE = Table(
    headers=("theta", "Today-r", "Mean-r"),
    rows=[
        ("AL29", 66.87, 44.09),
        ("AL30", 76.31, 40.65),
        ("AE38", 26.49, 39.08),
        ("AL41", 43.25, 50.65),
        ("AL35", 40.96, 45.12),
        ("GD29", 56.15, 44.77),
        ("GD30", 51.42, 43.54),
        ("GD38", 6.06, 46.96),
        ("GD41", 25.54, 51.53),
        ("GD35", 26.17, 41.69),
    ],
)

# Price-bridge waterfall table (2 columns, 7 rows).
WATERFALL_TABLE = Table(
    headers=("trace0-x", "trace0-y"),
    rows=[
        ("Price previous year", 200000.0),
        ("Quantity difference", -10000.0),
        ("Currency impact", -10000.0),
        ("Market impact", 15000.0),
        ("Price reduction", -10000.0),
        ("Not controlled", -25000.0),
        ("Price current", 100000.0),
    ],
)

# City/category/score table behind the signature worked example.
CITY_TABLE = Table(
    headers=("City", "Category", "Score"),
    rows=[
        ("Paris", "A", 88.0),
        ("Paris", "B", 92.0),
        ("London", "A", 84.0),
        ("London", "B", 94.0),
    ],
)

CITY_COMPAT_SIGNATURE = "categorical4Pariscategorical4Aquantitative489.5"

# Published CIEDE2000 verification pairs: (lab1, lab2, delta).
CIEDE2000_PAIRS = [
    ((50, 2.6772, -79.7751), (50, 0, -82.7485), 2.0425),
    ((50, 3.1571, -77.2803), (50, 0, -82.7485), 2.8615),
    ((50, 2.8361, -74.0200), (50, 0, -82.7485), 3.4412),
    ((50, -1.3802, -84.2814), (50, 0, -82.7485), 1.0000),
    ((50, -1.1848, -84.8006), (50, 0, -82.7485), 1.0000),
    ((50, -0.9009, -85.5211), (50, 0, -82.7485), 1.0000),
    ((50, 0, 0), (50, -1, 2), 2.3669),
    ((50, -1, 2), (50, 0, 0), 2.3669),
    ((50, 2.4900, -0.0010), (50, -2.4900, 0.0009), 7.1792),
    ((50, 2.4900, -0.0010), (50, -2.4900, 0.0010), 7.1792),
    ((50, 2.4900, -0.0010), (50, -2.4900, 0.0011), 7.2195),
    ((50, 2.4900, -0.0010), (50, -2.4900, 0.0012), 7.2195),
    ((50, -0.0010, 2.4900), (50, 0.0009, -2.4900), 4.8045),
    ((50, -0.0010, 2.4900), (50, 0.0010, -2.4900), 4.8045),
    ((50, -0.0010, 2.4900), (50, 0.0011, -2.4900), 4.7461),
    ((50, 2.5, 0), (50, 0, -2.5), 4.3065),
    ((50, 2.5, 0), (73, 25, -18), 27.1492),
    ((50, 2.5, 0), (61, -5, 29), 22.8977),
    ((50, 2.5, 0), (56, -27, -3), 31.9030),
    ((50, 2.5, 0), (58, 24, 15), 19.4535),
    ((50, 2.5, 0), (50, 3.1736, 0.5854), 1.0000),
    ((50, 2.5, 0), (50, 3.2972, 0), 1.0000),
    ((50, 2.5, 0), (50, 1.8634, 0.5757), 1.0000),
    ((50, 2.5, 0), (50, 3.2592, 0.3350), 1.0000),
    ((60.2574, -34.0099, 36.2677), (60.4626, -34.1751, 39.4387), 1.2644),
    ((63.0109, -31.0961, -5.8663), (62.8187, -29.7946, -4.0864), 1.2630),
    ((61.2901, 3.7196, -5.3901), (61.4292, 2.2480, -4.9620), 1.8731),
    ((35.0831, -44.1164, 3.7933), (35.0232, -40.0716, 1.5901), 1.8645),
    ((22.7233, 20.0904, -46.6940), (23.0331, 14.9730, -42.5619), 2.0373),
    ((36.4612, 47.8580, 18.3852), (36.2715, 50.5065, 21.2231), 1.4146),
    ((90.8027, -2.0831, 1.4410), (91.1528, -1.6435, 0.0447), 1.4441),
    ((90.9257, -0.5406, -0.9208), (88.6381, -0.8985, -0.7239), 1.5381),
    ((6.7747, -0.2908, -2.4247), (5.8714, -0.0985, -2.2286), 0.6377),
]
