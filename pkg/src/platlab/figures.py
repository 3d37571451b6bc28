"""Matplotlib rendering of analysis reports and MAE grids to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.lines import Line2D  # noqa: E402

from .model import PlatformKind, PlatformRole  # noqa: E402
from .report import AnalysisReport  # noqa: E402
from .trajectory import sample_polyline  # noqa: E402
from .validation import MaeGridResult  # noqa: E402

#: Approach class to plot color (still, moving, still+run, moving+run).
CLASS_COLORS = {
    "green": "#2ca02c",
    "yellow": "#d4b106",
    "orange": "#ff7f0e",
    "red": "#d62728",
}


def level_figure(report: AnalysisReport) -> plt.Figure:
    """Level layout with trajectories, graph edges, and the best path."""
    fig, ax = plt.subplots(figsize=(11, 6))
    level = report.level
    centers = {}
    for p in level.platforms:
        y = p.surface_top
        style = {"color": "0.25", "lw": 5, "solid_capstyle": "butt"}
        if p.kind is PlatformKind.DYNAMIC:
            style["color"] = "#1f77b4"
        elif p.kind is PlatformKind.FADING:
            style.update(color="0.6", ls=(0, (2, 1)))
        ax.plot([p.surface_left, p.surface_right], [y, y], **style)
        if p.motion is not None:
            dx, dy = ((p.motion.amplitude, 0)
                      if p.motion.axis.value == "horizontal"
                      else (0, p.motion.amplitude))
            ax.add_patch(plt.Rectangle(
                (p.surface_left, y - 0.08), p.length + dx, 0.16 + dy,
                fill=False, ls=":", ec="#1f77b4", lw=1))
        if p.spikes:
            xs = [p.surface_left + 0.25 + i * 0.5
                  for i in range(int(p.length // 0.5))]
            ax.plot(xs, [y + 0.12] * len(xs), "^", color="#d62728", ms=5)
        label = {PlatformRole.START: " (start)", PlatformRole.EXIT: " (exit)"}
        ax.annotate(p.id + label.get(p.role, ""),
                    (p.surface_left, y), textcoords="offset points",
                    xytext=(0, -14), fontsize=8, color="0.3")
        centers[p.id] = (p.center, y)

    if report.graph is not None:
        for edge in report.graph.edges:
            for traj in edge.witness_trajectories:
                pts = sample_polyline(traj, report.trajectory_points)
                ax.plot([q[0] for q in pts], [q[1] for q in pts],
                        color=CLASS_COLORS[traj.approach.color_class],
                        lw=1.0, alpha=0.55)
        best_edges = []
        if report.paths is not None and report.paths.best_index is not None:
            best_edges = report.paths.paths[report.paths.best_index].path.edges
        for edge in best_edges:
            (x0, y0), (x1, y1) = centers[edge.from_id], centers[edge.to_id]
            ax.annotate("", xy=(x1, y1 + 0.25), xytext=(x0, y0 + 0.25),
                        arrowprops=dict(arrowstyle="-|>", color="#d62728",
                                        lw=2.2, shrinkA=8, shrinkB=8))
            ax.annotate(f"p {edge.probability:.3f} / d {edge.difficulty:.3f}",
                        ((x0 + x1) / 2, (y0 + y1) / 2 + 0.35),
                        fontsize=7.5, color="#d62728", ha="center")

    handles = [Line2D([], [], color=c, lw=2, label=name) for name, c in
               (("still", CLASS_COLORS["green"]),
                ("moving", CLASS_COLORS["yellow"]),
                ("still + run", CLASS_COLORS["orange"]),
                ("moving + run", CLASS_COLORS["red"]))]
    ax.legend(handles=handles, loc="upper left", fontsize=8, framealpha=0.9)
    ax.set_title(f"{level.name}: jump analysis")
    ax.set_xlabel("x (units)")
    ax.set_ylabel("y (units)")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    return fig


def mae_figure(grid: MaeGridResult) -> plt.Figure:
    """Grouped MAE bars per noise kind, one bar group per reaction time."""
    kinds = sorted({c.noise_kind for c in grid.cells}, key=lambda k: k.value)
    fig, axes = plt.subplots(1, len(kinds), figsize=(4.2 * len(kinds), 3.6),
                             squeeze=False, sharey=True)
    for ax, kind in zip(axes[0], kinds):
        cells = [c for c in grid.cells if c.noise_kind is kind]
        rts = sorted({c.reaction_time for c in cells})
        pss = sorted({c.player_skill for c in cells})
        width = 0.8 / max(len(pss), 1)
        for j, ps in enumerate(pss):
            xs, ys, errs = [], [], []
            for i, rt in enumerate(rts):
                match = [c for c in cells
                         if c.reaction_time == rt and c.player_skill == ps]
                if match:
                    xs.append(i + (j - (len(pss) - 1) / 2) * width)
                    ys.append(match[0].mae)
                    errs.append(match[0].stderr)
            ax.bar(xs, ys, width=width * 0.92, yerr=errs, capsize=2,
                   label=f"Ps={ps:g}")
        ax.set_xticks(range(len(rts)))
        ax.set_xticklabels([f"Rt={rt:g}s" for rt in rts], fontsize=8)
        ax.set_title(kind.value)
        ax.grid(True, axis="y", alpha=0.3)
    axes[0][0].set_ylabel("MAE")
    axes[0][-1].legend(fontsize=8)
    fig.tight_layout()
    return fig


def save_report_figures(report: AnalysisReport, base: Path) -> list[Path]:
    """Write the level figure next to the report file; returns written paths."""
    out = base.with_name(base.stem + "_level.png")
    fig = level_figure(report)
    fig.savefig(out, dpi=140)
    plt.close(fig)
    return [out]


def save_grid_figures(grid: MaeGridResult, base: Path) -> list[Path]:
    out = base.with_name(base.stem + "_mae.png")
    fig = mae_figure(grid)
    fig.savefig(out, dpi=140)
    plt.close(fig)
    return [out]
