// Thin typed client for the chord game service.

import type { BoardConfig, GameState, LegalMoves } from './types.js';

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body?.detail === 'string') detail = body.detail;
  } catch {
    // keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class GameClient {
  constructor(private baseUrl: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) await parseError(response);
    return response.json() as Promise<T>;
  }

  createGame(config: BoardConfig): Promise<GameState> {
    return this.request('/games', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(config),
    });
  }

  getState(id: string): Promise<GameState> {
    return this.request(`/games/${id}`);
  }

  getLegal(id: string): Promise<LegalMoves> {
    return this.request(`/games/${id}/legal`);
  }

  postMove(id: string, dots: number[], player?: number): Promise<GameState> {
    return this.request(`/games/${id}/moves`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(player === undefined ? { dots } : { dots, player }),
    });
  }
}
