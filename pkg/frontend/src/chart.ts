/**
 * Dependency-free SVG rendering for the split curve and the ratio gauge.
 * Pure string builders so they are trivially testable.
 */

import type { CurvePoint } from "./state.js";

const WIDTH = 640;
const HEIGHT = 260;
const PAD = { left: 44, right: 12, top: 12, bottom: 30 };

function x(split: number): number {
  return PAD.left + (split / 100) * (WIDTH - PAD.left - PAD.right);
}

function y(ratio: number): number {
  const clamped = Math.max(0, Math.min(1, ratio));
  return PAD.top + (1 - clamped) * (HEIGHT - PAD.top - PAD.bottom);
}

export function renderCurveSvg(
  curve: CurvePoint[],
  bestSplit: number,
  evaluatedSplit: number,
): string {
  const points = curve.map((p) => `${x(p.split).toFixed(1)},${y(p.ratio).toFixed(1)}`).join(" ");
  const best = curve.find((p) => p.split === bestSplit);
  const evaluated = curve.find((p) => p.split === evaluatedSplit);
  const gridLines = [0, 0.25, 0.5, 0.75, 1]
    .map(
      (r) =>
        `<line x1="${PAD.left}" y1="${y(r)}" x2="${WIDTH - PAD.right}" y2="${y(r)}" class="grid"/>` +
        `<text x="${PAD.left - 6}" y="${y(r) + 4}" class="tick" text-anchor="end">${r}</text>`,
    )
    .join("");
  const xTicks = [0, 25, 50, 75, 100]
    .map((s) => `<text x="${x(s)}" y="${HEIGHT - 8}" class="tick" text-anchor="middle">${s}%</text>`)
    .join("");
  const bestDot = best
    ? `<circle cx="${x(best.split)}" cy="${y(best.ratio)}" r="5" class="best-dot">` +
      `<title>best split ${best.split}%: ratio ${best.ratio.toFixed(3)}</title></circle>`
    : "";
  const evalDot =
    evaluated && evaluatedSplit !== bestSplit
      ? `<circle cx="${x(evaluated.split)}" cy="${y(evaluated.ratio)}" r="4" class="eval-dot"/>`
      : "";
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="risk ratio by budget split">` +
    gridLines +
    xTicks +
    `<polyline points="${points}" class="curve"/>` +
    bestDot +
    evalDot +
    `</svg>`
  );
}

export function renderGaugeSvg(ratio: number): string {
  const clamped = Math.max(0, Math.min(1, ratio));
  const angle = Math.PI * (1 - clamped); // 1.0 points left, 0.0 points right
  const cx = 90;
  const cy = 80;
  const r = 64;
  const needleX = cx + r * Math.cos(angle);
  const needleY = cy - r * Math.sin(angle);
  return (
    `<svg viewBox="0 0 180 96" role="img" aria-label="risk ratio gauge">` +
    `<path d="M ${cx - r} ${cy} A ${r} ${r} 0 0 1 ${cx + r} ${cy}" class="gauge-arc"/>` +
    `<line x1="${cx}" y1="${cy}" x2="${needleX.toFixed(1)}" y2="${needleY.toFixed(1)}" class="gauge-needle"/>` +
    `<text x="${cx}" y="${cy + 14}" text-anchor="middle" class="gauge-label">${clamped.toFixed(3)}</text>` +
    `</svg>`
  );
}
