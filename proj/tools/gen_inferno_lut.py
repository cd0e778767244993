#!/usr/bin/env python3
"""Regenerate data/inferno_lut.txt and the embedded table from matplotlib's inferno samples.

Each of the 256 float samples is scaled by 255 and rounded half away from zero.
The checksum is CRC-32 over the body lines (everything after the header), LF-terminated.
"""
import math
import pathlib
import sys
import zlib

from matplotlib import __version__ as mpl_version
from matplotlib._cm_listed import _inferno_data


def to_byte(v: float) -> int:
    return int(math.floor(v * 255.0 + 0.5))


def main() -> int:
    root = pathlib.Path(__file__).resolve().parent.parent
    rows = [tuple(to_byte(c) for c in rgb) for rgb in _inferno_data]
    assert len(rows) == 256
    body = "".join(f"{i} {r} {g} {b}\n" for i, (r, g, b) in enumerate(rows))
    crc = zlib.crc32(body.encode("ascii")) & 0xFFFFFFFF
    provenance = f"matplotlib-{mpl_version}:_cm_listed._inferno_data*255,round-half-away"
    header = f"# inferno provenance={provenance} crc32={crc:08x}\n"
    (root / "data" / "inferno_lut.txt").write_text(header + body)

    inc = ["// Generated by tools/gen_inferno_lut.py; do not edit.",
           f"// provenance: {provenance}",
           f"// crc32: {crc:08x}"]
    inc += [f"{{{r}, {g}, {b}}}," for r, g, b in rows]
    (root / "src" / "spectral" / "inferno_lut.inc").write_text("\n".join(inc) + "\n")
    print(f"crc32={crc:08x}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
