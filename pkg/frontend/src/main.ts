import { GameClient } from './api.js';
import { mountApp } from './app.js';

// Served from the chord service itself (same origin) or pointed elsewhere
// with ?api=http://host:port for a two-browser game.
const api = new URLSearchParams(window.location.search).get('api') ?? '';
mountApp(new GameClient(api));
