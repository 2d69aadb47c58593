// Pure view-model logic. No game rules live here: what is selectable and
// submittable is derived entirely from the service's legal-move list, and
// the losing window comes from the service's witness.

import type { DotStatus, GameState } from './types.js';

export interface Point {
  x: number;
  y: number;
}

export function dotLayout(count: number, cx: number, cy: number, radius: number): Point[] {
  const points: Point[] = [];
  for (let i = 0; i < count; i++) {
    const angle = (2 * Math.PI * i) / count - Math.PI / 2;
    points.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  return points;
}

function isSubset(small: number[], big: number[]): boolean {
  return small.every((d) => big.includes(d));
}

/** True when some legal move contains the whole selection plus the dot. */
export function canExtend(selection: number[], dot: number, legal: number[][]): boolean {
  if (selection.includes(dot)) return false;
  const extended = [...selection, dot];
  return legal.some((move) => isSubset(extended, move));
}

/** Add or remove a dot, refusing additions no legal move allows. */
export function toggleDot(selection: number[], dot: number, legal: number[][]): number[] {
  if (selection.includes(dot)) return selection.filter((d) => d !== dot);
  if (!canExtend(selection, dot, legal)) return selection;
  return [...selection, dot].sort((a, b) => a - b);
}

/** The selection is submittable only when it is itself a legal move. */
export function canSubmit(selection: number[], legal: number[][]): boolean {
  const sorted = [...selection].sort((a, b) => a - b);
  return legal.some(
    (move) => move.length === sorted.length && move.every((d, i) => d === sorted[i]),
  );
}

export function witnessDots(state: GameState): Set<number> {
  return new Set(state.witness?.dots ?? []);
}

export interface DotView {
  index: number;
  status: DotStatus;
  selected: boolean;
  selectable: boolean;
  inWitness: boolean;
}

export function dotViews(state: GameState, selection: number[], legal: number[][]): DotView[] {
  const witness = witnessDots(state);
  return state.statuses.map((status, index) => ({
    index,
    status,
    selected: selection.includes(index),
    selectable: !state.finished && (selection.includes(index) || canExtend(selection, index, legal)),
    inWitness: witness.has(index),
  }));
}

export function banner(state: GameState): string {
  if (state.finished) {
    if (state.winner !== null) {
      return `Player ${state.loser} closed a balanced window - Player ${state.winner} wins`;
    }
    return 'All dots crossed: no winner';
  }
  return `Player ${state.turn} to move`;
}

export function countsLine(state: GameState): string {
  const per = state.statuses.length / 2;
  return `P1 ${state.counts.p1}/${per} - P2 ${state.counts.p2}/${per}`;
}
