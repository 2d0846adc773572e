"""Published resonance data: ground-state (size, gamma, nu, E) rows.

``BOX_ROWS`` are even-sector oscillator ground states in a box of width L
(E in units of omega, E = nu + 1/2); ``DISC_ROWS`` are m = 0 oscillator
ground states in a disc of radius R (E = nu + 1).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TableRow:
    table: str
    size: float
    gamma: float
    nu: float
    energy: float


BOX_ROWS = tuple(
    TableRow("box", *row)
    for row in [
        (8.0, -3.7288, -0.0014, 0.49858),
        (7.0, -3.1715, -0.00795, 0.49205),
        (6.0, -2.5657, -0.0334, 0.4666),
        (5.0, -1.8735, -0.0962, 0.4038),
        (4.0, -1.1366, -0.1985, 0.3015),
        (3.0, -0.5349, -0.3192, 0.1808),
        (2.0, -0.1641, -0.4168, 0.0832),
        (1.0, -0.0206, -0.4790, 0.021),
    ]
)

DISC_ROWS = tuple(
    TableRow("disc", *row)
    for row in [
        (4.0, -3.4609, -0.0099, 0.9901),
        (3.5, -2.8662, -0.0466, 0.9534),
        (3.0, -2.2280, -0.1450, 0.855),
        (2.5, -1.5504, -0.3196, 0.6804),
        (2.0, -0.8986, -0.5254, 0.4746),
        (1.5, -0.4070, -0.7232, 0.2768),
        (1.0, -0.1240, -0.8753, 0.1247),
        (0.5, -0.0157, -0.9688, 0.0312),
    ]
)

TOLERANCE = 2e-3
