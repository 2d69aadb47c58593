// SVG rendering of a circle board. Graph boards draw their dots along the
// same ring in service order (the Euler circuit makes this faithful).

import { banner, countsLine, dotLayout, dotViews } from './model.js';
import type { GameState } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const SIZE = 360;
const RADIUS = 140;

export interface BoardCallbacks {
  onDotClick(index: number): void;
}

export function renderBoard(
  container: HTMLElement,
  state: GameState,
  selection: number[],
  legal: number[][],
  callbacks: BoardCallbacks,
): void {
  container.textContent = '';

  const status = document.createElement('div');
  status.className = 'banner' + (state.finished ? ' finished' : '');
  status.textContent = banner(state);
  container.appendChild(status);

  const counts = document.createElement('div');
  counts.className = 'counts';
  counts.textContent = countsLine(state);
  container.appendChild(counts);

  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute('class', 'board');

  const ring = document.createElementNS(SVG_NS, 'circle');
  ring.setAttribute('cx', String(SIZE / 2));
  ring.setAttribute('cy', String(SIZE / 2));
  ring.setAttribute('r', String(RADIUS));
  ring.setAttribute('class', 'ring');
  svg.appendChild(ring);

  const layout = dotLayout(state.statuses.length, SIZE / 2, SIZE / 2, RADIUS);
  const views = dotViews(state, selection, legal);

  // highlight the losing window behind the dots
  for (const view of views) {
    if (!view.inWitness) continue;
    const halo = document.createElementNS(SVG_NS, 'circle');
    halo.setAttribute('cx', String(layout[view.index].x));
    halo.setAttribute('cy', String(layout[view.index].y));
    halo.setAttribute('r', '22');
    halo.setAttribute('class', 'witness-halo');
    svg.appendChild(halo);
  }

  for (const view of views) {
    const dot = document.createElementNS(SVG_NS, 'circle');
    dot.setAttribute('cx', String(layout[view.index].x));
    dot.setAttribute('cy', String(layout[view.index].y));
    dot.setAttribute('r', '14');
    const classes = ['dot', view.status];
    if (view.selected) classes.push('selected');
    if (view.selectable) classes.push('selectable');
    if (view.inWitness) classes.push('witness');
    dot.setAttribute('class', classes.join(' '));
    dot.setAttribute('data-dot', String(view.index));
    dot.addEventListener('click', () => callbacks.onDotClick(view.index));
    svg.appendChild(dot);

    const label = document.createElementNS(SVG_NS, 'text');
    label.setAttribute('x', String(layout[view.index].x));
    label.setAttribute('y', String(layout[view.index].y + 4));
    label.setAttribute('class', 'dot-label');
    label.textContent = String(view.index);
    svg.appendChild(label);
  }

  container.appendChild(svg);
}
