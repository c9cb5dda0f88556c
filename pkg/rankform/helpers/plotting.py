# rankform/helpers/plotting.py
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from loguru import logger  # noqa: E402

from ..sensitivity import SweepRecord  # noqa: E402


def write_sweep_svg(record: SweepRecord, path: str, title: str = "") -> None:
    """One line per node against c, saved as a standalone SVG file"""
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        for m, node in enumerate(record.nodes):
            ax.plot(record.c_grid, record.values[:, m], label=f"node {node}")
        ax.set_xlim(record.c_grid[0], record.c_grid[-1])
        ax.set_xlabel(f"c ({record.c_grid[0]:g} to {record.c_grid[-1]:g})")
        ax.set_ylabel(record.variant.value.upper())
        if title:
            ax.set_title(title)
        if len(record.nodes) <= 12:
            ax.legend(loc="best", fontsize="small")
        fig.savefig(path, format="svg")
    finally:
        plt.close(fig)
    logger.info(f"Saved sweep chart with {len(record.nodes)} series to {path}")
