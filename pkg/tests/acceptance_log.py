"""Collects one line per acceptance criterion for the terminal summary."""

LINES: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    LINES[number] = f"criterion {number}: {status} - {title}" + (f" ({detail})" if detail else "")
