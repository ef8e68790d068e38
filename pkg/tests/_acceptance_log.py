"""Per-criterion verdicts collected by the acceptance suite."""

RESULTS: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, part: str, ok: bool, detail: str = "") -> None:
    RESULTS.setdefault(criterion, []).append((part, ok, detail))


def summary_lines() -> list[str]:
    lines = []
    for k in sorted(RESULTS):
        parts = RESULTS[k]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {'ok' if good else 'FAILED'}{' (' + d + ')' if d else ''}" for name, good, d in parts)
        lines.append(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}")
    return lines
