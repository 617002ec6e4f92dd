"""Figure rendering for CLI reports.

Each function takes the already-built document and writes one matplotlib
figure next to the delimited output. Imported lazily by the CLI so plain
data runs never touch matplotlib.
"""

from __future__ import annotations

from typing import Any, Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["render_figure"]


def _title(doc: Mapping[str, Any]) -> str:
    p = doc["params"]
    return (
        f"{doc['command']}  ({p['geometry']}, D={p['dim']}, "
        f"r0={p['radius']:g}, omega={p['omega']:g})"
    )


def _plot_spectrum(ax, doc) -> None:
    for row in doc["rows"]:
        ax.hlines(row["energy"], row["L"] - 0.3, row["L"] + 0.3)
        ax.annotate(
            f"n_r={row['n_r']}",
            (row["L"] + 0.32, row["energy"]),
            fontsize=7,
            va="center",
        )
    ax.set_xlabel("angular momentum L")
    ax.set_ylabel("energy")


def _plot_wavefn(ax, doc) -> None:
    xs = [row["coordinate"] for row in doc["rows"]]
    ys = [row["value"] for row in doc["rows"]]
    ax.plot(xs, ys)
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel(doc["meta"].get("coordinate", "coordinate"))
    ax.set_ylabel("R")


def _plot_verify(ax, doc) -> None:
    names = [row["check"] for row in doc["rows"]]
    values = [max(abs(row["value"]), 1e-18) for row in doc["rows"]]
    targets = [max(abs(row["target"]), 1e-18) for row in doc["rows"]]
    colors = ["tab:green" if row["passed"] else "tab:red" for row in doc["rows"]]
    y = range(len(names))
    ax.barh(y, values, color=colors)
    for i, t in enumerate(targets):
        ax.plot([t, t], [i - 0.4, i + 0.4], color="black", lw=1.2)
    ax.set_yticks(list(y), names)
    ax.set_xscale("log")
    ax.set_xlabel("measured (bar) vs tolerance (tick)")


def _plot_contract(ax, doc) -> None:
    rows = doc["rows"]
    radii = [row["r0"] for row in rows]
    for key, marker in (("energy_error", "o"), ("l2_error", "s")):
        vals = [row[key] for row in rows]
        if any(v > 0 for v in vals):
            ax.loglog(radii, [max(v, 1e-18) for v in vals], marker=marker, label=key)
    ax.set_xlabel("r0")
    ax.set_ylabel("error")
    ax.legend()


def _plot_bound_count(ax, doc) -> None:
    rows = doc["rows"]
    ax.bar([row["L"] for row in rows], [row["count"] for row in rows])
    ax.set_xlabel("angular momentum L")
    ax.set_ylabel("bound states")


_RENDERERS = {
    "spectrum": _plot_spectrum,
    "wavefn": _plot_wavefn,
    "verify": _plot_verify,
    "contract": _plot_contract,
    "bound-count": _plot_bound_count,
}


def render_figure(doc: Mapping[str, Any], path: str) -> None:
    renderer = _RENDERERS[doc["command"]]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    renderer(ax, doc)
    ax.set_title(_title(doc), fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
