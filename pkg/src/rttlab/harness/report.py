"""Plain-text tables and a hand-written SVG scatter from a results CSV."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from xml.sax.saxutils import escape

from .experiment import read_records

TABLE_COLUMNS = ("spec", "pattern", "eta", "n", "min_degree", "alpha_r", "alpha_star",
                 "copies", "uncovered", "allowance", "quasiperfect", "factor", "status")
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def construction_name(spec: str) -> str:
    return spec.split(":", 1)[0]


def table(rows, columns=TABLE_COLUMNS) -> str:
    if not rows:
        return ""
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def summary(rows) -> list[dict[str, str]]:
    """Uncovered counts aggregated by construction, eta and measured alpha."""
    groups: dict[tuple[str, str, str], list[dict]] = defaultdict(list)
    for r in rows:
        groups[construction_name(r["spec"]), r["eta"], r["alpha_r"]].append(r)
    out = []
    for (name, eta, alpha), rs in sorted(groups.items()):
        unc = [int(r["uncovered"]) for r in rs if r["uncovered"] not in ("", None)]
        out.append({
            "construction": name,
            "eta": eta,
            "alpha_r": alpha,
            "rows": str(len(rs)),
            "min_uncovered": str(min(unc)) if unc else "",
            "max_uncovered": str(max(unc)) if unc else "",
            "quasiperfect": "/".join(sorted({r["quasiperfect"] for r in rs})),
            "factor": "/".join(sorted({r["factor"] for r in rs})),
        })
    return out


def scatter_svg(rows, width: int = 480, height: int = 320) -> str:
    """Uncovered vertices against n, one colour per construction."""
    pts = [(construction_name(r["spec"]), int(r["n"]), int(r["uncovered"]))
           for r in rows if r.get("n") not in ("", None) and r.get("uncovered") not in ("", None)]
    pad = 40
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    parts = [head, f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    parts.append(f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>')
    parts.append(f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>')
    parts.append(f'<text x="{width / 2}" y="{height - 8}" text-anchor="middle" font-size="12">n</text>')
    parts.append(f'<text x="12" y="{height / 2}" font-size="12" transform="rotate(-90 12 {height / 2})" '
                 f'text-anchor="middle">uncovered</text>')
    if pts:
        xmax = max(p[1] for p in pts) or 1
        ymax = max(p[2] for p in pts) or 1
        names = sorted({p[0] for p in pts})
        colour = {nm: PALETTE[i % len(PALETTE)] for i, nm in enumerate(names)}
        for name, n, u in pts:
            x = pad + (width - 2 * pad) * n / xmax
            y = height - pad - (height - 2 * pad) * u / ymax
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3" fill="{colour[name]}"><title>'
                         f'{escape(name)} n={n} uncovered={u}</title></circle>')
        for i, nm in enumerate(names):
            y = pad + 14 * i
            parts.append(f'<rect x="{width - pad - 90}" y="{y - 8}" width="8" height="8" fill="{colour[nm]}"/>')
            parts.append(f'<text x="{width - pad - 78}" y="{y}" font-size="10">{escape(nm)}</text>')
        parts.append(f'<text x="{width - pad}" y="{height - pad + 14}" font-size="10" text-anchor="end">{xmax}</text>')
        parts.append(f'<text x="{pad - 4}" y="{pad + 4}" font-size="10" text-anchor="end">{ymax}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def report(records_path, svg_path=None) -> str:
    """Text report for a results CSV; also writes the scatter when asked."""
    rows = read_records(records_path)
    if svg_path is not None and rows:
        Path(svg_path).write_text(scatter_svg(rows))
    if not rows:
        return ""
    text = table(rows)
    summ = summary(rows)
    if len(rows) > 1:
        cols = tuple(summ[0])
        text += "\n\n" + table(summ, cols)
    return text + "\n"
