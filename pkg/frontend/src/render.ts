import { compactLine, formatScore, sumLine } from "./format";
import type { BoardState } from "./board";
import type { AssignmentView, InterpretationView } from "./types";

export interface Handlers {
  paletteClick(iconId: string): void;
  removeClick(position: number): void;
  tileClick(position: number): void;
  selectRank(rank: number): void;
  dismissNotice(id: number): void;
}

const TILE_WIDTH = 104;
const TILE_GAP = 10;
const ARC_HEIGHT = 72;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function render(root: HTMLElement, state: BoardState, handlers: Handlers): void {
  root.textContent = "";
  root.append(
    renderNotices(state, handlers),
    renderPalette(state, handlers),
    renderSequence(state, handlers),
    renderInterpretations(state, handlers),
    renderDetail(state),
  );
}

function renderNotices(state: BoardState, handlers: Handlers): HTMLElement {
  const box = el("div", "notices");
  for (const notice of state.notices) {
    const item = el("div", "notice", notice.message);
    const dismiss = el("button", "dismiss", "x");
    dismiss.addEventListener("click", () => handlers.dismissNotice(notice.id));
    item.append(dismiss);
    box.append(item);
  }
  return box;
}

function renderPalette(state: BoardState, handlers: Handlers): HTMLElement {
  const section = el("section", "palette");
  section.append(el("h2", undefined, "Palette"));
  const grid = el("div", "palette-grid");
  for (const entry of state.palette) {
    const tile = el("button", "palette-tile");
    tile.dataset.iconId = entry.id;
    tile.append(el("span", "gloss", entry.gloss));
    if (entry.predicative) {
      tile.append(el("span", "badge", `P${entry.valency}`));
      tile.title = entry.cases.map((slot) => slot.case).join(", ");
    }
    tile.addEventListener("click", () => handlers.paletteClick(entry.id));
    grid.append(tile);
  }
  section.append(grid);
  return section;
}

function renderSequence(state: BoardState, handlers: Handlers): HTMLElement {
  const section = el("section", "sequence");
  const heading = state.replaceTarget === null
    ? "Sequence"
    : `Sequence (pick a palette icon to replace position ${state.replaceTarget})`;
  section.append(el("h2", undefined, heading));
  section.append(renderArcs(state));
  const strip = el("div", "strip");
  for (const item of state.sequence) {
    const tile = el("div", "tile");
    tile.dataset.pos = String(item.position);
    if (state.replaceTarget === item.position) tile.classList.add("replace-target");
    const body = el("div", "tile-body");
    body.append(el("span", "pos", String(item.position)));
    body.append(el("span", "gloss", item.gloss));
    if (item.predicative) body.append(el("span", "badge", "P"));
    body.addEventListener("click", () => handlers.tileClick(item.position));
    const remove = el("button", "remove", "x");
    remove.title = `remove ${item.lexicon_id}`;
    remove.addEventListener("click", () => handlers.removeClick(item.position));
    tile.append(body, remove);
    strip.append(tile);
  }
  if (!state.sequence.length) {
    strip.append(el("div", "placeholder", "click palette icons to build a sequence"));
  }
  section.append(strip);
  return section;
}

/** Labeled dependency arcs above the strip for the selected interpretation. */
function renderArcs(state: BoardState): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("class", "arcs");
  const width = Math.max(1, state.sequence.length) * (TILE_WIDTH + TILE_GAP);
  svg.setAttribute("viewBox", `0 0 ${width} ${ARC_HEIGHT}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(ARC_HEIGHT));
  const selected = state.interpretations[state.selectedRank - 1];
  if (!selected) return svg;
  const centerOf = (position: number) =>
    (position - 1) * (TILE_WIDTH + TILE_GAP) + TILE_WIDTH / 2;
  for (const assignment of selected.assignments) {
    for (const fill of assignment.fills) {
      const x1 = centerOf(assignment.position);
      const x2 = centerOf(fill.candidate_position);
      const mid = (x1 + x2) / 2;
      const lift = Math.min(ARC_HEIGHT - 14, 24 + Math.abs(x2 - x1) / 8);
      const path = document.createElementNS("http://www.w3.org/2000/svg", "path");
      path.setAttribute(
        "d",
        `M ${x1} ${ARC_HEIGHT} Q ${mid} ${ARC_HEIGHT - lift} ${x2} ${ARC_HEIGHT}`,
      );
      path.setAttribute("class", "arc");
      svg.append(path);
      const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
      label.setAttribute("x", String(mid));
      label.setAttribute("y", String(ARC_HEIGHT - lift / 2 - 6));
      label.setAttribute("class", "arc-label");
      label.textContent = `${fill.case} ${formatScore(fill.value)}`;
      svg.append(label);
    }
  }
  return svg;
}

function renderInterpretations(state: BoardState, handlers: Handlers): HTMLElement {
  const section = el("section", "interpretations");
  section.append(el("h2", undefined, "Interpretations"));
  const list = el("ol", "cards");
  for (const interp of state.interpretations) {
    const card = el("li", "card");
    card.dataset.rank = String(interp.rank);
    if (interp.rank === state.selectedRank) card.classList.add("selected");
    card.append(el("span", "rank", `#${interp.rank}`));
    card.append(el("span", "line", compactLine(interp)));
    card.addEventListener("click", () => handlers.selectRank(interp.rank));
    list.append(card);
  }
  if (!state.interpretations.length) {
    list.append(el("li", "placeholder", "nothing parsed yet"));
  }
  section.append(list);
  return section;
}

function renderDetail(state: BoardState): HTMLElement {
  const section = el("section", "detail");
  section.append(el("h2", undefined, `Breakdown (rank ${state.selectedRank})`));
  const selected = state.interpretations[state.selectedRank - 1];
  if (!selected) {
    section.append(el("p", "placeholder", "no interpretation selected"));
    return section;
  }
  if (!selected.assignments.some((a) => a.fills.length)) {
    section.append(el("p", "placeholder", "no dependencies found"));
    return section;
  }
  for (const assignment of selected.assignments) {
    section.append(renderAssignmentDetail(assignment));
  }
  if (selected.assignments.length > 1) {
    const values = selected.assignments.map((a) => a.score);
    section.append(el("p", "total-line", `total: ${sumLine(values, selected.score)}`));
  }
  return section;
}

function renderAssignmentDetail(assignment: AssignmentView): HTMLElement {
  const box = el("div", "assignment");
  box.append(
    el(
      "h3",
      undefined,
      `${assignment.predicate} @${assignment.position} (score ${formatScore(assignment.score)})`,
    ),
  );
  if (!assignment.fills.length) {
    box.append(el("p", "placeholder", "no fillers passed the threshold"));
    return box;
  }
  const table = el("table", "fills");
  const head = el("tr");
  for (const column of ["case", "filler", "raw", "distance", "fading", "value"]) {
    head.append(el("th", undefined, column));
  }
  table.append(head);
  for (const fill of assignment.fills) {
    const row = el("tr");
    row.append(el("td", undefined, fill.case));
    row.append(el("td", undefined, `${fill.candidate} @${fill.candidate_position}`));
    row.append(el("td", undefined, formatScore(fill.raw)));
    row.append(el("td", undefined, String(fill.distance)));
    row.append(el("td", undefined, formatScore(fill.fading)));
    row.append(el("td", undefined, formatScore(fill.value)));
    table.append(row);
  }
  box.append(table);
  box.append(
    el("p", "sum-line", sumLine(assignment.fills.map((f) => f.value), assignment.score)),
  );
  return box;
}

/** What interpretations an interpretation card shows; exported for tests. */
export function cardText(interp: InterpretationView): string {
  return `#${interp.rank} ${compactLine(interp)}`;
}
