import type { TreeResponse } from "./types.js";

/** Collapsible model of a service-delivered empirical tree.  Ranks are the
 * service's numbers verbatim; the client never recomputes them. */
export interface TreeNodeModel {
  id: string;
  sequence: number[];
  rank: number | null;
  children: TreeNodeModel[];
}

export interface TreeModel {
  empty: boolean;
  notice?: string;
  root: TreeNodeModel | null;
  rank: number | null;
}

const keyOf = (seq: number[]): string => seq.join(".");

export function buildTreeModel(tree: TreeResponse): TreeModel {
  if (!tree.nodes.length) {
    return {
      empty: true,
      notice: "no infeasible sequences at these caps",
      root: null,
      rank: null,
    };
  }
  const ranks = new Map<string, number>();
  for (const [seq, rank] of tree.node_ranks) {
    ranks.set(keyOf(seq), rank);
  }
  const nodes = new Map<string, TreeNodeModel>();
  const ordered = [...tree.nodes].sort((a, b) => a.length - b.length);
  for (const seq of ordered) {
    nodes.set(keyOf(seq), {
      id: keyOf(seq),
      sequence: seq,
      rank: ranks.get(keyOf(seq)) ?? null,
      children: [],
    });
  }
  for (const seq of ordered) {
    if (!seq.length) continue;
    const parent = nodes.get(keyOf(seq.slice(0, -1)));
    parent?.children.push(nodes.get(keyOf(seq))!);
  }
  for (const node of nodes.values()) {
    node.children.sort((a, b) => {
      const x = a.sequence[a.sequence.length - 1] ?? 0;
      const y = b.sequence[b.sequence.length - 1] ?? 0;
      return x - y;
    });
  }
  return {
    empty: false,
    root: nodes.get("") ?? null,
    rank: tree.rank,
  };
}

export interface ExplorerState {
  model: TreeModel;
  expanded: Set<string>;
}

export function newExplorer(tree: TreeResponse): ExplorerState {
  const model = buildTreeModel(tree);
  const expanded = new Set<string>();
  if (model.root) expanded.add(model.root.id);
  return { model, expanded };
}

export function toggle(state: ExplorerState, id: string): ExplorerState {
  const expanded = new Set(state.expanded);
  if (expanded.has(id)) expanded.delete(id);
  else expanded.add(id);
  return { ...state, expanded };
}

export interface VisibleRow {
  id: string;
  depth: number;
  label: string;
  badge: string;
  expandable: boolean;
  expanded: boolean;
}

/** Flatten the expanded part of the tree into display rows with rank badges. */
export function visibleRows(state: ExplorerState): VisibleRow[] {
  const rows: VisibleRow[] = [];
  const walk = (node: TreeNodeModel, depth: number) => {
    const expanded = state.expanded.has(node.id);
    rows.push({
      id: node.id,
      depth,
      label: node.sequence.length ? `(${node.sequence.join(",")})` : "root",
      badge: node.rank === null ? "-" : `rank ${node.rank}`,
      expandable: node.children.length > 0,
      expanded,
    });
    if (expanded) {
      for (const child of node.children) walk(child, depth + 1);
    }
  };
  if (state.model.root) walk(state.model.root, 0);
  return rows;
}
