import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import type { ExportResponse, SpaceJson } from "../src/types.js";
import { loadFixture, replayFetch } from "./replay.js";

function clientFor(name: string) {
  const calls = loadFixture(name);
  const replay = replayFetch(calls);
  return {
    client: new ApiClient(replay.baseUrl, replay.fetchImpl),
    calls,
    replay,
  };
}

describe("ApiClient", () => {
  it("lists and uploads spaces", async () => {
    const { client, calls } = clientFor("game_roundtrip.json");
    const space = calls[0].body as SpaceJson;
    const uploaded = await client.uploadSpace(space);
    expect(uploaded.label).toBe("interval(-8,8)");
    const spaces = await client.listSpaces();
    expect(spaces.spaces).toContain("interval(-8,8)");
  });

  it("creates games and plays moves against recorded responses", async () => {
    const { client, calls } = clientFor("game_roundtrip.json");
    await client.uploadSpace(calls[0].body as SpaceJson);
    const created = await client.createGame({
      space: "interval(-8,8)",
      bound: 2,
      kcap: 4,
      rmax: 6,
    });
    expect(created.state.status).toBe("ongoing");
    const moved = await client.move(created.id, 2);
    expect(moved.round?.k).toBe(2);
  });

  it("raises ApiError with the service error code on conflict", async () => {
    const { client } = clientFor("game_roundtrip.json");
    await expect(client.move("g1", 3)).rejects.toSatisfy((err: unknown) => {
      return err instanceof ApiError && err.status === 409 && err.code === "conflict";
    });
  });

  it("fetches empirical trees with rank payloads", async () => {
    const { client } = clientFor("trees.json");
    const tree = await client.empiricalTree({
      space: "interval(-8,8)",
      rmax: 2,
      lmax: 2,
      bound: 2,
    });
    expect(tree.rank).toBe(1);
    expect(tree.nodes).toContainEqual([2]);
  });

  it("round-trips export payloads", async () => {
    const { client, calls } = clientFor("game_roundtrip.json");
    const recorded = calls.find((c) => c.path.endsWith("/export"))!
      .response as ExportResponse;
    const exported = await client.exportGame("g1");
    expect(exported).toEqual(recorded);
  });
});
