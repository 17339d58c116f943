import { describe, expect, it } from "vitest";

import { ViewState } from "../src/state.js";

describe("ViewState", () => {
  it("starts with the full window", () => {
    const st = new ViewState(5);
    expect(st.window).toEqual({ i: 0, j: 4 });
    expect(st.width).toBe(5);
  });

  it("rejects empty sequences", () => {
    expect(() => new ViewState(0)).toThrow();
  });

  it("keeps 0 <= i <= j < m under endpoint slides", () => {
    const st = new ViewState(5);
    st.setStart(3);
    st.setEnd(1); // drags the start down with it
    expect(st.window).toEqual({ i: 1, j: 1 });
    st.setStart(4);
    expect(st.window).toEqual({ i: 4, j: 4 });
    st.setEnd(99);
    expect(st.window).toEqual({ i: 4, j: 4 });
    st.setStart(-7);
    expect(st.window.i).toBe(0);
  });

  it("width mode clamps width and position", () => {
    const st = new ViewState(10);
    st.setWidthAndPosition(4, 8); // position clamps to m - w = 6
    expect(st.window).toEqual({ i: 6, j: 9 });
    st.setWidthAndPosition(99, 0);
    expect(st.window).toEqual({ i: 0, j: 9 });
    st.setWidthAndPosition(1, 3);
    expect(st.window).toEqual({ i: 3, j: 3 });
  });

  it("toggles keys without duplicates", () => {
    const st = new ViewState(3, ["a"]);
    st.toggleKey("b", true);
    st.toggleKey("b", true);
    expect(st.keys).toEqual(["a", "b"]);
    st.toggleKey("a", false);
    expect(st.keys).toEqual(["b"]);
  });

  it("caches sweeps by width and sorted key set", () => {
    const st = new ViewState(4);
    const rows = [{ i: 0, j: 1, stats: { x: 1 } }];
    st.storeSweep(2, ["b", "a"], rows);
    expect(st.cachedSweep(2, ["a", "b"])).toEqual(rows);
    expect(st.cachedSweep(3, ["a", "b"])).toBeUndefined();
  });

  it("error state greys values until the next good response", () => {
    const st = new ViewState(4);
    st.applyStats({ components: 1 });
    expect(st.error).toBeNull();
    st.applyError("boom");
    expect(st.error).toBe("boom");
    expect(st.stats).toEqual({ components: 1 }); // stale values retained
    st.applyStats({ components: 2 });
    expect(st.error).toBeNull();
  });

  it("notifies subscribers on every mutation", () => {
    const st = new ViewState(4);
    let calls = 0;
    st.subscribe(() => {
      calls += 1;
    });
    st.setStart(1);
    st.setEnd(2);
    st.setKeys(["x"]);
    expect(calls).toBe(3);
  });
});
