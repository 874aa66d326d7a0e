#!/usr/bin/env python3
# Copyright 2026 The Trizone Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the tri-zone CLI fixtures and their expected outputs.

The expected masks are computed here with numpy, independently of the C++
code, so the CLI test compares two separate implementations.

    python3 tools/gen_trizone_fixtures.py tests/fixtures/trizone
"""

import pathlib
import sys

import numpy as np
from PIL import Image

W, H = 12, 10
PALETTE = {0: "background", 1: "skin", 3: "upper", 5: "lower"}


def save_gray(path, values):
    Image.fromarray(values.astype(np.uint8), mode="L").save(path)


def main(out):
    out = pathlib.Path(out)
    out.mkdir(parents=True, exist_ok=True)

    labels = np.zeros((H, W), np.uint8)
    labels[1:9, 3:9] = 1        # body
    labels[2:5, 3:9] = 3        # upper garment
    labels[5:8, 4:8] = 5        # lower garment
    save_gray(out / "parsing.png", labels)
    (out / "parsing.palette.txt").write_text(
        "".join(f"{k}={v}\n" for k, v in sorted(PALETTE.items())))

    gen = np.zeros((H, W), bool)
    gen[2:7, 2:10] = True       # wider and longer than the garment
    fg = np.zeros((H, W), bool)
    fg[1:9, 2:10] = True
    pred = np.zeros((H, W), np.uint8)
    pred[2:4, 0:11] = 2      # reaches outside the foreground
    pred[4:8, 1:11] = 1
    save_gray(out / "gen.png", gen * 255)
    save_gray(out / "fg.png", fg * 255)
    save_gray(out / "pred.png", pred)

    tryon = labels == 3
    a, b = pred == 2, pred == 1

    def zones(imagi):
        z = np.zeros((H, W), np.uint8)
        z[imagi] = 1
        z[tryon] = 2
        return z

    expected = {
        "expected_round1.png": zones(gen & fg & ~tryon),
        "expected_round2.png": zones((a | b) & fg & ~tryon),
        "expected_round2_imagi_only.png": zones((a | (b & fg)) & ~tryon),
    }
    lines = []
    for name, z in expected.items():
        save_gray(out / name, z)
        lines.append(f"{name} tryon {(z == 2).sum()} recon {(z == 0).sum()} imagi {(z == 1).sum()}")
    (out / "expected_counts.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/trizone")
