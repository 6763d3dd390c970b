import { describe, expect, it } from "vitest";

import { BoardController, type BoardApi } from "../src/board";
import type { SessionView } from "../src/types";

function view(ids: string[]): SessionView {
  return {
    session_id: "s1",
    sequence: ids.map((id, index) => ({
      instance_id: index + 1,
      lexicon_id: id,
      gloss: id,
      position: index + 1,
      predicative: false,
    })),
    interpretations: [{ rank: 1, score: 0, assignments: [] }],
    config: { gamma: 0.5, threshold: 0.1, top_k: 3, top_m: 10, strict_fill: false },
  };
}

/** Fake API whose mutations resolve only against released credits, so the
 * test can observe how many requests are in flight at once. */
class GatedApi implements BoardApi {
  calls: string[] = [];
  inFlight = 0;
  maxInFlight = 0;
  private credits = 0;
  private gates: Array<() => void> = [];
  private ids: string[] = [];

  release(count = 1): void {
    for (let i = 0; i < count; i++) {
      const gate = this.gates.shift();
      if (gate) {
        gate();
      } else {
        this.credits += 1;
      }
    }
  }

  private gated<T>(make: () => T): Promise<T> {
    this.inFlight += 1;
    this.maxInFlight = Math.max(this.maxInFlight, this.inFlight);
    return new Promise((resolve) => {
      const fire = () => {
        this.inFlight -= 1;
        resolve(make());
      };
      if (this.credits > 0) {
        this.credits -= 1;
        queueMicrotask(fire);
      } else {
        this.gates.push(fire);
      }
    });
  }

  async getLexicon() {
    return { icons: [] };
  }

  async createSession() {
    this.calls.push("create");
    return "s1";
  }

  async getSession() {
    this.calls.push("get");
    return view(this.ids);
  }

  appendIcons(_sid: string, ids: string[]) {
    this.calls.push(`append:${ids.join(",")}`);
    return this.gated(() => {
      this.ids = [...this.ids, ...ids];
      return view(this.ids);
    });
  }

  removeIcons(_sid: string, positions: number[]) {
    this.calls.push(`remove:${positions.join(",")}`);
    return this.gated(() => {
      this.ids = this.ids.filter((_, index) => !positions.includes(index + 1));
      return view(this.ids);
    });
  }
}

async function ticks(count: number): Promise<void> {
  for (let i = 0; i < count; i++) {
    await Promise.resolve();
  }
}

describe("mutation queue", () => {
  it("sends rapid clicks in order, one at a time", async () => {
    const api = new GatedApi();
    const controller = new BoardController(api);
    void controller.appendIcon("cat");
    void controller.appendIcon("drink");
    void controller.appendIcon("milk");
    await ticks(5); // let the first request reach the wire
    expect(api.inFlight).toBe(1); // later clicks are queued, not sent
    api.release(10);
    await controller.idle();
    expect(api.maxInFlight).toBe(1); // never overlapping
    expect(api.calls).toEqual(["create", "append:cat", "append:drink", "append:milk"]);
    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual([
      "cat",
      "drink",
      "milk",
    ]);
  });

  it("replace is one queued edit of two requests", async () => {
    const api = new GatedApi();
    api.release(10); // no gating needed here
    const controller = new BoardController(api);
    void controller.appendIcon("cat");
    void controller.replaceIcon(1, "dog");
    await controller.idle();
    expect(api.calls).toEqual(["create", "append:cat", "remove:1", "append:dog"]);
    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual(["dog"]);
  });

  it("a failed edit posts a notice and resyncs from the server", async () => {
    const api = new GatedApi();
    api.release(10);
    const failing: BoardApi = {
      getLexicon: api.getLexicon.bind(api),
      createSession: api.createSession.bind(api),
      getSession: api.getSession.bind(api),
      appendIcons: api.appendIcons.bind(api),
      removeIcons: () => Promise.reject(new Error("stale position")),
    };
    const controller = new BoardController(failing);
    await controller.appendIcon("cat");
    await controller.removeIcon(7);
    await controller.idle();
    expect(controller.state.notices.map((n) => n.message)).toContain("stale position");
    expect(api.calls.at(-1)).toBe("get"); // board refetched the confirmed state
    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual(["cat"]);
  });
});
