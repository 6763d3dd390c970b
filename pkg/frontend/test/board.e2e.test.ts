// Scripted browser test against the real Python service (spawned in
// globalSetup): build the sequence through palette clicks and assert the
// rendered rank-1 card matches the CLI's output for the same input.

import { execFileSync } from "node:child_process";
import { beforeAll, describe, expect, inject, it } from "vitest";

import { ApiClient } from "../src/api";
import { mountBoard } from "../src/main";

declare module "vitest" {
  interface ProvidedContext {
    apiBase: string;
    repoRoot: string;
    pythonPath: string;
  }
}

const apiBase = inject("apiBase");
const repoRoot = inject("repoRoot");
const pythonPath = inject("pythonPath");

function cliTopLine(icons: string): string {
  const stdout = execFileSync(
    "python3",
    ["-m", "iconparse", "parse", "--lexicon", "micro", "--icons", icons],
    { cwd: repoRoot, env: { ...process.env, PYTHONPATH: pythonPath }, encoding: "utf-8" },
  );
  return stdout.split("\n")[0] ?? "";
}

function clickPalette(root: HTMLElement, iconId: string): void {
  const tile = root.querySelector<HTMLButtonElement>(
    `button.palette-tile[data-icon-id="${iconId}"]`,
  );
  expect(tile, `palette tile for ${iconId}`).toBeTruthy();
  tile!.click();
}

function rankOneCard(root: HTMLElement): string {
  const card = root.querySelector('.card[data-rank="1"] .line');
  expect(card, "rank-1 card").toBeTruthy();
  return card!.textContent ?? "";
}

describe("board against the live service", () => {
  let root: HTMLElement;
  let controller: ReturnType<typeof mountBoard>;

  beforeAll(async () => {
    root = document.createElement("main");
    document.body.append(root);
    controller = mountBoard(root, new ApiClient(apiBase));
    await controller.idle();
    // palette request is outside the mutation queue; poll briefly
    for (let i = 0; i < 50 && !root.querySelector(".palette-tile"); i++) {
      await new Promise((resolve) => setTimeout(resolve, 100));
    }
  });

  it("renders the rank-1 card exactly as the CLI prints it", async () => {
    clickPalette(root, "cat");
    clickPalette(root, "drink");
    clickPalette(root, "milk");
    await controller.idle();

    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual([
      "cat",
      "drink",
      "milk",
    ]);
    const expected = cliTopLine("cat,drink,milk");
    expect(expected).toBe("drink(agent=cat, object=milk) score=1.0");
    expect(rankOneCard(root)).toBe(expected);
  });

  it("shows the score decomposition of the selected interpretation", () => {
    const sum = root.querySelector(".detail .sum-line");
    expect(sum?.textContent).toBe("0.5 + 0.5 = 1.0");
    const labels = Array.from(root.querySelectorAll(".arc-label"), (n) => n.textContent);
    expect(labels).toContain("agent 0.5");
    expect(labels).toContain("object 0.5");
  });

  it("updates after removing milk, matching the CLI again", async () => {
    const remove = root.querySelector<HTMLButtonElement>('.tile[data-pos="3"] .remove');
    expect(remove).toBeTruthy();
    remove!.click();
    await controller.idle();

    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual(["cat", "drink"]);
    expect(rankOneCard(root)).toBe(cliTopLine("cat,drink"));
    expect(rankOneCard(root)).toBe("drink(agent=cat) score=0.5");
  });

  it("replaces via tile mark plus palette click", async () => {
    const tileBody = root.querySelector<HTMLElement>('.tile[data-pos="1"] .tile-body');
    tileBody!.click(); // mark position 1 for replacement
    clickPalette(root, "milk");
    await controller.idle();
    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual(["drink", "milk"]);
    expect(rankOneCard(root)).toBe(cliTopLine("drink,milk"));
  });

  it("surfaces server errors as notices and stays consistent", async () => {
    await controller.removeIcon(99);
    await controller.idle();
    expect(controller.state.notices.length).toBeGreaterThan(0);
    // the board still mirrors the server: same sequence as before the error
    expect(controller.state.sequence.map((item) => item.lexicon_id)).toEqual(["drink", "milk"]);
  });
});
