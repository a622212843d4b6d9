import { describe, expect, it } from "vitest";

import { layeredLayout } from "../src/layout.js";
import type { ModelDoc } from "../src/types.js";
import { chainModel } from "./fixtures.js";

const diamond: ModelDoc = {
  states: ["start", "left", "right", "merge"].map((id) => ({
    id,
    label: id,
    reads_words: 1,
    writes_words: 1,
    actors: [],
  })),
  initial_state: "start",
  transitions: [
    { id: "t1", from: "start", to: "left", method_name: "goLeft", actor: "" },
    { id: "t2", from: "start", to: "right", method_name: "goRight", actor: "" },
    { id: "t3", from: "left", to: "merge", method_name: "joinL", actor: "" },
    { id: "t4", from: "right", to: "merge", method_name: "joinR", actor: "" },
  ],
};

describe("layeredLayout", () => {
  it("ranks a chain left to right", () => {
    const layout = layeredLayout(chainModel(5));
    for (let i = 0; i < 5; i++) {
      expect(layout.ranks.get(`s${i}`)).toBe(i);
    }
    const xs = [0, 1, 2, 3, 4].map((i) => layout.positions.get(`s${i}`)!.x);
    expect([...xs].sort((a, b) => a - b)).toEqual(xs);
  });

  it("puts parallel branches on the same rank, ordered by id", () => {
    const layout = layeredLayout(diamond);
    expect(layout.ranks.get("left")).toBe(1);
    expect(layout.ranks.get("right")).toBe(1);
    const left = layout.positions.get("left")!;
    const right = layout.positions.get("right")!;
    expect(left.x).toBe(right.x);
    expect(left.y).toBeLessThan(right.y); // "left" < "right" alphabetically
  });

  it("is deterministic for the same model", () => {
    const a = layeredLayout(diamond);
    const b = layeredLayout(diamond);
    expect([...a.positions.entries()]).toEqual([...b.positions.entries()]);
    expect(a.edges).toEqual(b.edges);
  });

  it("still places states unreachable from the initial state", () => {
    const model = chainModel(3);
    model.states.push({
      id: "orphan",
      label: "orphan",
      reads_words: 1,
      writes_words: 1,
      actors: [],
    });
    const layout = layeredLayout(model);
    expect(layout.positions.has("orphan")).toBe(true);
    expect(layout.ranks.get("orphan")).toBe(3);
  });

  it("marks backward transitions so they render curved", () => {
    const model = chainModel(3);
    model.transitions.push({
      id: "t9",
      from: "s2",
      to: "s0",
      method_name: "restart",
      actor: "",
    });
    const layout = layeredLayout(model);
    const back = layout.edges.find((e) => e.id === "t9")!;
    expect(back.back).toBe(true);
    expect(layout.edges.filter((e) => e.back)).toHaveLength(1);
  });
});
