// Wire types mirroring the chord game service JSON exactly.

export type DotStatus = 'none' | 'p1' | 'p2';

export interface CircleBoardConfig {
  board: 'circle';
  dots: number;
  m: number;
  n: number;
}

export interface GraphBoardConfig {
  board: 'graph';
  graph: unknown;
  positions: [string, string][];
  m: number;
  n: number;
}

export type BoardConfig = CircleBoardConfig | GraphBoardConfig;

export interface Witness {
  dots: number[];
  loser: number;
  subset?: Record<string, [string, string][]>;
}

export interface GameState {
  id?: string;
  version: number;
  statuses: DotStatus[];
  turn: number;
  counts: { p1: number; p2: number };
  finished: boolean;
  loser: number | null;
  winner: number | null;
  witness: Witness | null;
  config: BoardConfig;
}

export interface LegalMoves {
  moves: number[][];
  version: number;
}
