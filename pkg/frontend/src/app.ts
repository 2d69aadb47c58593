// Page controller: create a game, poll its state once a second, let the
// player to move pick dots and submit the turn. At most one move post is
// in flight; renders are last-writer-wins keyed by the state version.

import { ApiError, GameClient } from './api.js';
import { renderBoard } from './board.js';
import { canSubmit, toggleDot } from './model.js';
import type { GameState, LegalMoves } from './types.js';

export interface AppElements {
  setup: HTMLElement;
  dotsInput: HTMLInputElement;
  mInput: HTMLInputElement;
  nInput: HTMLInputElement;
  createButton: HTMLButtonElement;
  joinInput: HTMLInputElement;
  joinButton: HTMLButtonElement;
  game: HTMLElement;
  board: HTMLElement;
  gameIdLabel: HTMLElement;
  submitButton: HTMLButtonElement;
  clearButton: HTMLButtonElement;
  message: HTMLElement;
}

export class App {
  state: GameState | null = null;
  legal: LegalMoves = { moves: [], version: -1 };
  selection: number[] = [];
  private gameId = '';
  private posting = false;
  private renderedVersion = -1;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(private client: GameClient, private el: AppElements) {
    el.createButton.addEventListener('click', () => void this.createGame());
    el.joinButton.addEventListener('click', () => void this.joinGame());
    el.submitButton.addEventListener('click', () => void this.submitTurn());
    el.clearButton.addEventListener('click', () => {
      this.selection = [];
      this.render(true);
    });
  }

  async createGame(): Promise<void> {
    const dots = Number(this.el.dotsInput.value);
    const m = Number(this.el.mInput.value);
    const n = Number(this.el.nInput.value);
    try {
      const state = await this.client.createGame({ board: 'circle', dots, m, n });
      this.attach(state.id!, state);
    } catch (err) {
      this.showError(err);
    }
  }

  async joinGame(): Promise<void> {
    const id = this.el.joinInput.value.trim();
    if (!id) return;
    try {
      const state = await this.client.getState(id);
      this.attach(id, state);
    } catch (err) {
      this.showError(err);
    }
  }

  private attach(id: string, state: GameState): void {
    this.gameId = id;
    this.state = state;
    this.selection = [];
    this.renderedVersion = -1;
    this.el.setup.hidden = true;
    this.el.game.hidden = false;
    this.el.gameIdLabel.textContent = id;
    void this.refresh();
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = setInterval(() => void this.refresh(), 1000);
  }

  /** Poll the state and the legal moves; stale responses never win. */
  async refresh(): Promise<void> {
    if (!this.gameId) return;
    try {
      const state = await this.client.getState(this.gameId);
      if (this.state && state.version < this.state.version) return;
      const turnChanged = !this.state || state.version !== this.state.version;
      this.state = state;
      if (state.finished) {
        this.legal = { moves: [], version: state.version };
        if (this.timer !== null) {
          clearInterval(this.timer);
          this.timer = null;
        }
      } else if (turnChanged || this.legal.version < state.version) {
        this.legal = await this.client.getLegal(this.gameId);
      }
      if (turnChanged) this.selection = this.selection.filter((d) => state.statuses[d] === 'none');
      this.render(turnChanged);
    } catch (err) {
      this.showError(err);
    }
  }

  onDotClick(index: number): void {
    if (!this.state || this.state.finished || this.posting) return;
    this.selection = toggleDot(this.selection, index, this.legal.moves);
    this.render(true);
  }

  async submitTurn(): Promise<void> {
    if (!this.state || this.posting) return;
    if (!canSubmit(this.selection, this.legal.moves)) return;
    this.posting = true;
    try {
      const state = await this.client.postMove(this.gameId, this.selection, this.state.turn);
      this.state = state;
      this.selection = [];
      if (!state.finished) {
        this.legal = await this.client.getLegal(this.gameId);
      } else {
        this.legal = { moves: [], version: state.version };
      }
      this.render(true);
    } catch (err) {
      this.showError(err);
      await this.refresh();
    } finally {
      this.posting = false;
    }
  }

  dispose(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  private showError(err: unknown): void {
    if (err instanceof ApiError) {
      this.el.message.textContent = err.status === 409 ? `Rejected: ${err.detail}` : err.detail;
    } else {
      this.el.message.textContent = 'Network trouble; retrying on the next poll';
    }
  }

  render(force = false): void {
    const state = this.state;
    if (!state) return;
    if (!force && state.version === this.renderedVersion) return;
    this.renderedVersion = state.version;
    renderBoard(this.el.board, state, this.selection, this.legal.moves, {
      onDotClick: (i) => this.onDotClick(i),
    });
    this.el.submitButton.disabled =
      state.finished || !canSubmit(this.selection, this.legal.moves);
    if (state.finished) this.el.message.textContent = '';
  }
}

export function mountApp(client: GameClient, root: Document = document): App {
  const byId = (id: string) => {
    const node = root.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node;
  };
  return new App(client, {
    setup: byId('setup'),
    dotsInput: byId('dots') as HTMLInputElement,
    mInput: byId('max-per-turn') as HTMLInputElement,
    nInput: byId('window-half') as HTMLInputElement,
    createButton: byId('create') as HTMLButtonElement,
    joinInput: byId('join-id') as HTMLInputElement,
    joinButton: byId('join') as HTMLButtonElement,
    game: byId('game'),
    board: byId('board'),
    gameIdLabel: byId('game-id'),
    submitButton: byId('submit') as HTMLButtonElement,
    clearButton: byId('clear') as HTMLButtonElement,
    message: byId('message'),
  });
}
