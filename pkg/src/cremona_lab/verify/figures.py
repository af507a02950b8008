"""PNG summaries of a report: verdict counts and Weyl order profiles."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .registry import EXCEEDED, REFUTED, SKIPPED, VERIFIED, Report  # noqa: E402

COLORS = {VERIFIED: "tab:green", REFUTED: "tab:red", SKIPPED: "tab:gray", EXCEEDED: "tab:orange"}


def _verdict_chart(report: Report, path: str) -> None:
    summary = report.summary()
    labels = [VERIFIED, REFUTED, SKIPPED, EXCEEDED]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(labels, [summary[k] for k in labels], color=[COLORS[k] for k in labels])
    ax.set_ylabel("claims")
    ax.set_title(f"verdicts (seed {report.seed})")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def _profile_chart(claim_id: str, profile: dict, path: str) -> None:
    orders = sorted(profile, key=int)
    fig, axes = plt.subplots(1, len(orders), figsize=(3.2 * len(orders), 3), squeeze=False)
    for ax, m in zip(axes[0], orders):
        ranks = profile[m]["fixed_ranks"]
        keys = sorted(ranks, key=int)
        ax.bar(keys, [ranks[k] for k in keys], color="tab:blue")
        ax.set_title(f"order {m}: {profile[m]['count']} elements")
        ax.set_xlabel("fixed rank")
    axes[0][0].set_ylabel("elements")
    fig.suptitle(claim_id)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)


def render_report_figures(report: Report, directory: str) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = [os.path.join(directory, "verdicts.png")]
    _verdict_chart(report, paths[0])
    for v in report.verdicts:
        profile = v.detail.get("profile") if isinstance(v.detail, dict) else None
        if profile:
            path = os.path.join(directory, f"profile_{v.claim_id.replace('.', '_')}.png")
            _profile_chart(v.claim_id, profile, path)
            paths.append(path)
    return paths
