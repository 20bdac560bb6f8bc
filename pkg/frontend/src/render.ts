/** Pure HTML builders for the session view.
 *
 * Live nodes come straight from the current server snapshot; nodes that
 * were answered away are drawn as ghosts using the session's first
 * snapshot, so the shrinking search is visible. Exactly the live nodes
 * carry data-live="1".
 */

import type { Report, SnapshotNode, TreeSnapshot } from "./api.js";
import type { UiState } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function questionText(state: UiState): string {
  if (!state.pending) {
    return "";
  }
  return `(${state.questionNumber}) ${state.pending.label}?`;
}

export function reportText(report: Report | null): string {
  if (!report || report.buggy === null) {
    return "No bug has been found";
  }
  return `Bug found in node: ${report.buggy_label}`;
}

export function counterText(state: UiState): string {
  if (state.finished && state.report) {
    return `${state.report.questions} questions asked`;
  }
  if (state.pending) {
    return `question ${state.questionNumber}`;
  }
  return "";
}

function metricsTooltip(node: SnapshotNode): string {
  const fmt = (x: number) => (Number.isInteger(x) ? String(x) : x.toFixed(3));
  return `wi=${fmt(node.wi)} w=${fmt(node.w)} up=${fmt(node.up)} down=${fmt(node.down)}`;
}

function flatten(node: SnapshotNode | null, into: Map<number, SnapshotNode>): Map<number, SnapshotNode> {
  if (node) {
    into.set(node.id, node);
    node.children.forEach((c) => flatten(c, into));
  }
  return into;
}

function nodeHtml(shape: SnapshotNode, live: Map<number, SnapshotNode>): string {
  const current = live.get(shape.id);
  const classes = ["node"];
  let title = "";
  let liveAttr = "";
  if (!current) {
    classes.push("ghost");
  } else {
    liveAttr = ' data-live="1"';
    title = ` title="${escapeHtml(metricsTooltip(current))}"`;
    if (current.marking === "wrong") {
      classes.push("wrong");
    }
    if (current.pending) {
      classes.push("pending");
    }
  }
  const label = `<span class="${classes.join(" ")}"${liveAttr}${title}>` +
    `${escapeHtml(shape.label)}</span>`;
  if (shape.children.length === 0) {
    return `<li>${label}</li>`;
  }
  const children = shape.children.map((c) => nodeHtml(c, live)).join("");
  return `<li><details open><summary>${label}</summary><ul>${children}</ul></details></li>`;
}

export function renderTree(initial: TreeSnapshot | null, current: TreeSnapshot | null): string {
  if (!initial || !initial.root) {
    return "<p class=\"placeholder\">no session</p>";
  }
  const live = flatten(current ? current.root : null, new Map());
  return `<ul class="tree">${nodeHtml(initial.root, live)}</ul>`;
}

export function countRenderedLive(html: string): number {
  return html.split('data-live="1"').length - 1;
}

export function countRenderedPending(html: string): number {
  return html.split('class="node pending"').length - 1 +
    html.split('class="node wrong pending"').length - 1;
}
