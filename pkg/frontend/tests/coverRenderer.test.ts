import { describe, expect, it } from "vitest";

import { FAMILY_COLORS, POINT_CAP_2D, legend, renderCover } from "../src/coverRenderer.js";
import type { CoverJson, SpaceJson } from "../src/types.js";
import { loadFixtureObject } from "./replay.js";

interface RendererFixture {
  square_space: SpaceJson;
  square_cover: CoverJson;
  line_space: SpaceJson;
  line_cover: CoverJson;
  matrix_space: SpaceJson;
  matrix_cover: CoverJson;
}

const fx = loadFixtureObject<RendererFixture>("renderer.json");

describe("cover renderer", () => {
  it("renders a 1D cover as SVG with one circle per point", () => {
    const out = renderCover(fx.line_space, fx.line_cover);
    expect(out.kind).toBe("svg");
    if (out.kind !== "svg") return;
    const circles = out.svg.match(/<circle/g) ?? [];
    expect(circles.length).toBe(fx.line_space.points.length);
    expect(out.decimated).toBe(false);
  });

  it("colors points by family index", () => {
    const out = renderCover(fx.square_space, fx.square_cover);
    expect(out.kind).toBe("svg");
    if (out.kind !== "svg") return;
    for (const [fi, family] of fx.square_cover.families.entries()) {
      const pid = family[0]?.[0];
      if (!pid) continue;
      const entry = new RegExp(
        `fill="${FAMILY_COLORS[fi % FAMILY_COLORS.length]}"[^/]*data-point="${pid}"`,
      );
      expect(out.svg).toMatch(entry);
    }
  });

  it("uses only the coords delivered in the space JSON", () => {
    const out = renderCover(fx.square_space, fx.square_cover);
    if (out.kind !== "svg") throw new Error("expected svg");
    // every rendered point id is a real point with coords
    const ids = [...out.svg.matchAll(/data-point="([^"]+)"/g)].map((m) => m[1]);
    for (const id of ids) {
      expect(fx.square_space.coords![id]).toBeDefined();
    }
  });

  it("falls back to a set listing for matrix spaces", () => {
    const out = renderCover(fx.matrix_space, fx.matrix_cover);
    expect(out.kind).toBe("list");
    if (out.kind !== "list") return;
    expect(out.rows.length).toBe(1);
    expect(out.rows[0].points.length).toBe(fx.matrix_space.points.length);
  });

  it("decimates large 2D spaces with a notice", () => {
    const n = 60;
    const points: string[] = [];
    const coords: Record<string, number[]> = {};
    for (let x = 0; x < n; x++) {
      for (let y = 0; y < n; y++) {
        const id = `${x},${y}`;
        points.push(id);
        coords[id] = [x, y];
      }
    }
    const space: SpaceJson = {
      label: "big",
      points,
      coords,
      metric: { kind: "taxicab" },
    };
    const cover: CoverJson = { space: "big", s: [1], D: 200, families: [[points]] };
    const out = renderCover(space, cover);
    if (out.kind !== "svg") throw new Error("expected svg");
    expect(out.decimated).toBe(true);
    expect(out.notice).toMatch(/decimated/);
    const circles = out.svg.match(/<circle/g) ?? [];
    expect(circles.length).toBeLessThanOrEqual(POINT_CAP_2D);
  });

  it("legend mirrors the demand sequence", () => {
    const entries = legend(fx.square_cover);
    expect(entries.map((e) => e.demand)).toEqual(fx.square_cover.s);
    expect(entries[0].color).toBe(FAMILY_COLORS[0]);
  });
});
