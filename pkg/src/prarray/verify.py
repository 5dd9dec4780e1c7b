"""Ground-truth brute-force verification of array codes.

``window_census`` slides every n1 x n2 window (toroidally) over every
array and demands that each nonzero window pattern occur exactly once
and the zero pattern never.  ``shift_add_closure`` checks the linear
structure directly.  ``verify_prac`` chains the parameter arithmetic,
the census, and the closure check.

Window encoding: a window is read row-major from its top-left anchor
and interpreted as a binary number, first-read bit most significant.
All criteria share this encoding so witnesses are comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .folding import CodeParams

_CENSUS_AREA_CAP = 28  # occupancy table stays under 32 MiB
_BINCOUNT_AREA_CAP = 22  # above this, use the packed-bit table instead


@dataclass(frozen=True)
class Witness:
    """Where a verification failed."""

    kind: str
    message: str
    array_index: int | None = None
    position: tuple | None = None
    window_bits: str | None = None
    code: int | None = None

    def to_kv(self, prefix="witness"):
        out = {f"{prefix}.kind": self.kind, f"{prefix}.message": self.message}
        if self.array_index is not None:
            out[f"{prefix}.array"] = str(self.array_index)
        if self.position is not None:
            out[f"{prefix}.position"] = ",".join(str(v) for v in self.position)
        if self.window_bits is not None:
            out[f"{prefix}.window"] = self.window_bits
        if self.code is not None:
            out[f"{prefix}.code"] = str(self.code)
        return out


@dataclass(frozen=True)
class VerdictReport:
    """Outcome of one verification criterion."""

    criterion: str
    passed: bool
    params: CodeParams | None = None
    witness: Witness | None = None
    detail: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def to_kv(self):
        out = {"criterion": self.criterion, "verdict": self.verdict}
        if self.params is not None:
            out.update(
                {
                    "params.r1": str(self.params.r1),
                    "params.r2": str(self.params.r2),
                    "params.n1": str(self.params.n1),
                    "params.n2": str(self.params.n2),
                }
            )
        if self.witness is not None:
            out.update(self.witness.to_kv())
        for key, val in sorted(self.detail.items()):
            if key == "stages":
                val = ";".join(f"{s['criterion']}={s['verdict']}" for s in val)
            elif isinstance(val, (list, tuple)):
                val = ";".join(str(v) for v in val)
            out[f"detail.{key}"] = str(val)
        return out

    def to_text(self):
        head = f"{self.verdict.upper()} {self.criterion}"
        if self.params is not None:
            head += f" {self.params}"
        lines = [head]
        if self.witness is not None:
            lines.append(f"  witness: {self.witness.message}")
            if self.witness.position is not None:
                lines.append(f"  at array {self.witness.array_index}, position {self.witness.position}")
            if self.witness.window_bits is not None:
                lines.append(f"  window bits: {self.witness.window_bits}")
        for key, val in sorted(self.detail.items()):
            if key == "stages":
                for stage in val:
                    lines.append(f"  stage {stage['criterion']}: {stage['verdict']}")
            else:
                lines.append(f"  {key}: {val}")
        return "\n".join(lines)


def _window_codes(arr, n1, n2):
    """Codes of all r1*r2 windows of one array, as a numpy int64 grid."""
    g = arr.grid()
    ext = np.concatenate([g, g[: n1 - 1]], axis=0) if n1 > 1 else g
    ext = np.concatenate([ext, ext[:, : n2 - 1]], axis=1) if n2 > 1 else ext
    windows = np.lib.stride_tricks.sliding_window_view(ext, (n1, n2))
    weights = np.zeros((n1, n2), dtype=np.int64)
    for a in range(n1):
        for b in range(n2):
            weights[a, b] = 1 << ((n1 - 1 - a) * n2 + (n2 - 1 - b))
    out = np.empty((arr.r1, arr.r2), dtype=np.int64)
    # chunk rows so the widened window copy stays within ~32 MiB
    step = max(1, (1 << 22) // max(1, arr.r2 * n1 * n2))
    for lo in range(0, arr.r1, step):
        hi = min(lo + step, arr.r1)
        out[lo:hi] = np.tensordot(
            windows[lo:hi].astype(np.int64), weights, axes=([2, 3], [0, 1])
        )
    return out


def _locate_code(arrays, n1, n2, code, skip_first=False):
    seen_once = not skip_first
    for idx, arr in enumerate(arrays):
        codes = _window_codes(arr, n1, n2)
        for i, j in np.argwhere(codes == code):
            if not seen_once:
                seen_once = True
                continue
            i, j = int(i), int(j)
            window = "".join(
                str(arr.entry(i + a, j + b)) for a in range(n1) for b in range(n2)
            )
            return idx, (i, j), window
    return None, None, None


def window_census(arrays, n1, n2, params=None):
    """Slide all n1 x n2 windows; each nonzero pattern exactly once, zero never."""
    arrays = list(arrays)
    if n1 * n2 > _CENSUS_AREA_CAP:
        raise ValueError(f"window area {n1 * n2} exceeds the census cap {_CENSUS_AREA_CAP}")
    if arrays:
        r1, r2 = arrays[0].r1, arrays[0].r2
        if any(a.r1 != r1 or a.r2 != r2 for a in arrays):
            raise ValueError("arrays must share dimensions")
        if n1 > r1 or n2 > r2:
            raise ValueError(f"window {n1}x{n2} larger than array {r1}x{r2}")
    if params is None and arrays:
        params = CodeParams(arrays[0].r1, arrays[0].r2, n1, n2)
    expected = (1 << (n1 * n2)) - 1
    total = sum(a.r1 * a.r2 for a in arrays)
    detail = {"windows_total": total, "windows_expected": expected}

    def fail(witness):
        return VerdictReport("census", False, params, witness, detail)

    if total != expected:
        return fail(
            Witness(
                "count",
                f"window count {total} != 2^{n1 * n2} - 1 = {expected}",
            )
        )
    if n1 * n2 <= _BINCOUNT_AREA_CAP:
        problem = _census_by_counting(arrays, n1, n2, expected)
    else:
        problem = _census_by_bit_table(arrays, n1, n2, expected)
    if problem is not None:
        kind, code, occurrences = problem
        if kind == "zero-window":
            idx, pos, window = _locate_code(arrays, n1, n2, 0)
            return fail(
                Witness("zero-window", "all-zero window present", idx, pos, window, 0)
            )
        if kind == "duplicate-window":
            idx, pos, window = _locate_code(arrays, n1, n2, code, skip_first=True)
            times = f" {occurrences} times" if occurrences else ""
            return fail(
                Witness(
                    "duplicate-window",
                    f"window code {code} occurs more than once{times}",
                    idx,
                    pos,
                    window,
                    code,
                )
            )
        return fail(Witness("missing-window", f"window code {code} never occurs", code=code))
    detail["distinct_nonzero"] = expected
    return VerdictReport("census", True, params, None, detail)


def _census_by_counting(arrays, n1, n2, expected):
    counts = np.zeros(expected + 1, dtype=np.int64)
    for arr in arrays:
        codes = _window_codes(arr, n1, n2)
        counts += np.bincount(codes.ravel(), minlength=expected + 1)
    if counts[0]:
        return ("zero-window", 0, int(counts[0]))
    dup = np.nonzero(counts > 1)[0]
    if dup.size:
        code = int(dup[0])
        return ("duplicate-window", code, int(counts[code]))
    missing = np.nonzero(counts[1:] == 0)[0]
    if missing.size:
        return ("missing-window", int(missing[0]) + 1, 0)
    return None


def _census_by_bit_table(arrays, n1, n2, expected):
    # one bit per window pattern: 32 MiB at the area cap of 28
    table = np.zeros((expected >> 3) + 1, dtype=np.uint8)
    for arr in arrays:
        codes = _window_codes(arr, n1, n2).ravel()
        if not codes.all():
            return ("zero-window", 0, 0)
        vals, cnts = np.unique(codes, return_counts=True)
        if (cnts > 1).any():
            at = np.nonzero(cnts > 1)[0][0]
            return ("duplicate-window", int(vals[at]), int(cnts[at]))
        byte_idx = vals >> 3
        masks = (np.uint8(1) << (vals & 7).astype(np.uint8)).astype(np.uint8)
        clash = table[byte_idx] & masks
        if clash.any():
            return ("duplicate-window", int(vals[np.nonzero(clash)[0][0]]), 0)
        np.bitwise_or.at(table, byte_idx, masks)  # distinct codes, bytes may repeat
    set_bits = int(np.bitwise_count(table).sum())
    if set_bits != expected:
        absent = np.nonzero(np.bitwise_count(table) < 8)[0]
        for byte in absent:
            bits = int(table[byte])
            for b in range(8):
                code = (int(byte) << 3) | b
                if code and not (bits >> b & 1):
                    return ("missing-window", code, 0)
    return None


def shift_add_closure(arrays, params=None):
    """Every sum of a codeword with a shifted codeword is zero or a
    shift of a codeword."""
    arrays = list(arrays)
    if not arrays:
        return VerdictReport("shift-add", True, params, None, {"pairs_checked": 0})
    r1, r2 = arrays[0].r1, arrays[0].r2
    if any(a.r1 != r1 or a.r2 != r2 for a in arrays):
        raise ValueError("arrays must share dimensions")
    members = set()
    rotations = []
    for arr in arrays:
        rots = arr.rotations_packed()
        rotations.append(rots)
        members.update(rots)
    checked = 0
    for ia, a in enumerate(arrays):
        pa = a.packed()
        for ib, rots in enumerate(rotations):
            for t, rb in enumerate(rots):
                s = pa ^ rb
                checked += 1
                if s and s not in members:
                    dv, dh = t % r1, t // r1
                    return VerdictReport(
                        "shift-add",
                        False,
                        params,
                        Witness(
                            "closure",
                            f"array {ia} + array {ib} shifted by ({dv},{dh}) "
                            "is not a shifted codeword",
                            array_index=ia,
                            position=(dv, dh),
                        ),
                        {"pairs_checked": checked},
                    )
    return VerdictReport("shift-add", True, params, None, {"pairs_checked": checked})


def verify_prac(arrays, params):
    """Parameter arithmetic, then census, then shift-and-add closure.

    The verdict is the conjunction; the report carries the first failed
    stage (criterion 'parameters', 'census' or 'shift-add') and all
    stage reports in detail["stages"].
    """
    arrays = list(arrays)
    stages = []
    problem = params.violation()
    if problem is None and any(
        a.r1 != params.r1 or a.r2 != params.r2 for a in arrays
    ):
        problem = "array dimensions do not match the parameters"
    if problem is None:
        delta = params.codeword_count()
        if len(arrays) != delta:
            problem = f"code size {len(arrays)} != required {delta}"
    stages.append(
        VerdictReport(
            "parameters",
            problem is None,
            params,
            None if problem is None else Witness("parameters", problem),
            {"size": len(arrays)},
        )
    )
    if problem is None:
        stages.append(window_census(arrays, params.n1, params.n2, params))
        if stages[-1].passed:
            stages.append(shift_add_closure(arrays, params))
    first_fail = next((s for s in stages if not s.passed), None)
    outcome = first_fail if first_fail is not None else stages[-1]
    return VerdictReport(
        outcome.criterion,
        first_fail is None,
        params,
        outcome.witness,
        {"stages": [s.to_kv() for s in stages]},
    )
