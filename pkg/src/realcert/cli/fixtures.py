"""Named polynomials usable as ``@name`` wherever a spec is expected."""
from __future__ import annotations

FIXTURES: dict[str, str] = {
    # totally ordered line, four strongly real steps
    "line4": "A6; 4:0 2:4 3:9:3 2:14:3",
    # same line with the top vertex moved so it glues onto the middle
    "glued-line4": "A6; 4:0 2:4 3:9:3 1:7",
    # five vertices, no automated rds: real only through manual arguments
    "no-rds5": "A3; 2:0 1:3 3:3 2:6x2",
    # two translated copies of no-rds5 joined by a single arrow
    "no-rds5-pair": "A3; 2:0 1:3 3:3 2:6x2 2:-4 1:-7 3:-7 2:-10x2",
    # three width-3 strings forming a totally ordered prime graph
    "triangle3": "A4; 1:2:3 3:6:3 2:9:3",
    # two triangles in a row, translated by 14
    "triangle3-pair": "A4; 1:2:3 3:6:3 2:9:3 1:16:3 3:20:3 2:23:3",
}


def resolve(text: str) -> str:
    if text.startswith("@"):
        try:
            return FIXTURES[text[1:]]
        except KeyError:
            raise KeyError(f"unknown fixture {text!r}; known: {', '.join(sorted(FIXTURES))}") from None
    return text
