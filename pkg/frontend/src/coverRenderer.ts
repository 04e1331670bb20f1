import type { CoverJson, SpaceJson } from "./types.js";

/** Color classes per family index; cycled when a cover has more families. */
export const FAMILY_COLORS = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
];

export const POINT_CAP_2D = 2000;

export interface SvgRender {
  kind: "svg";
  svg: string;
  decimated: boolean;
  notice?: string;
}

export interface ListRender {
  kind: "list";
  rows: Array<{ family: number; set: number; points: string[] }>;
}

export type CoverRender = SvgRender | ListRender;

interface LaidOutPoint {
  id: string;
  x: number;
  y: number;
  family: number;
  set: number;
}

function familyOf(cover: CoverJson): Map<string, { family: number; set: number }> {
  const where = new Map<string, { family: number; set: number }>();
  cover.families.forEach((family, fi) => {
    family.forEach((set, si) => {
      for (const pid of set) {
        if (!where.has(pid)) where.set(pid, { family: fi, set: si });
      }
    });
  });
  return where;
}

/** Render a cover over a coordinate space as an SVG string; spaces without
 * coordinates fall back to an adjacency-list style listing.  Rendering uses
 * only the coords delivered in the space JSON. */
export function renderCover(space: SpaceJson, cover: CoverJson): CoverRender {
  if (!space.coords) {
    return renderAsList(cover);
  }
  const dims = space.coords[space.points[0]]?.length ?? 0;
  if (dims !== 1 && dims !== 2) {
    return renderAsList(cover);
  }
  const where = familyOf(cover);
  let pts: LaidOutPoint[] = space.points.map((pid) => {
    const c = space.coords![pid];
    const slot = where.get(pid) ?? { family: -1, set: -1 };
    return { id: pid, x: c[0], y: dims === 2 ? c[1] : 0, ...slot };
  });
  let decimated = false;
  if (dims === 2 && pts.length > POINT_CAP_2D) {
    const stride = Math.ceil(pts.length / POINT_CAP_2D);
    pts = pts.filter((_, i) => i % stride === 0);
    decimated = true;
  }
  const xs = pts.map((p) => p.x);
  const ys = pts.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const scale = 14;
  const pad = 12;
  const width = (maxX - minX) * scale + 2 * pad;
  const height = Math.max((maxY - minY) * scale + 2 * pad, 2 * pad + scale);
  const circles = pts
    .map((p) => {
      const cx = pad + (p.x - minX) * scale;
      const cy = height - pad - (p.y - minY) * scale;
      const color = p.family >= 0 ? FAMILY_COLORS[p.family % FAMILY_COLORS.length] : "#999";
      return (
        `<circle cx="${cx}" cy="${cy}" r="5" fill="${color}" ` +
        `data-point="${p.id}" data-family="${p.family}" data-set="${p.set}"/>`
      );
    })
    .join("");
  const svg =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">${circles}</svg>`;
  return {
    kind: "svg",
    svg,
    decimated,
    notice: decimated
      ? `showing ${pts.length} of ${space.points.length} points (decimated)`
      : undefined,
  };
}

function renderAsList(cover: CoverJson): ListRender {
  const rows: ListRender["rows"] = [];
  cover.families.forEach((family, fi) => {
    family.forEach((set, si) => {
      rows.push({ family: fi, set: si, points: [...set].sort() });
    });
  });
  return { kind: "list", rows };
}

/** Legend entries for the family color coding. */
export function legend(cover: CoverJson): Array<{ family: number; demand: number; color: string }> {
  return cover.s.map((demand, fi) => ({
    family: fi,
    demand,
    color: FAMILY_COLORS[fi % FAMILY_COLORS.length],
  }));
}
