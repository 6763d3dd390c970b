import type { InterpretationView } from "./types";

/** Score text identical to the Python front ends: rounded to 9 decimals,
 * integers rendered with one decimal place ("1.0", "0.5", "0.3"). */
export function formatScore(x: number): string {
  const rounded = Math.round(x * 1e9) / 1e9 + 0; // + 0 normalizes -0
  return Number.isInteger(rounded) ? rounded.toFixed(1) : String(rounded);
}

/** One-line rendering, e.g. "drink(agent=cat, object=milk) score=1.0". */
export function compactLine(interp: InterpretationView): string {
  const parts = interp.assignments.map((assignment) => {
    const fills = assignment.fills.map((f) => `${f.case}=${f.candidate}`).join(", ");
    return `${assignment.predicate}(${fills})`;
  });
  const body = parts.length ? parts.join("; ") : "(empty)";
  return `${body} score=${formatScore(interp.score)}`;
}

/** "0.5 + 0.5 = 1.0" style audit of an interpretation's score. */
export function sumLine(values: number[], total: number): string {
  if (!values.length) {
    return `score = ${formatScore(total)}`;
  }
  return `${values.map(formatScore).join(" + ")} = ${formatScore(total)}`;
}
