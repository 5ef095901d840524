/**
 * Popup state machine. Exactly one phase at a time; `done` implies a report.
 * A single scan may be in flight: each scan takes a token, and responses
 * carrying a stale token are discarded so a slow earlier request can never
 * overwrite a newer one.
 */

import type { ScanReport } from './schema';

export type Phase = 'idle' | 'scanning' | 'done' | 'error';

export interface PopupState {
  phase: Phase;
  report: ScanReport | null;
  errorMessage: string | null;
  tabUrl: string | null;
  scannable: boolean;
  token: number;
}

export function initialState(): PopupState {
  return {
    phase: 'idle',
    report: null,
    errorMessage: null,
    tabUrl: null,
    scannable: false,
    token: 0,
  };
}

export function tabResolved(state: PopupState, url: string | null): PopupState {
  const scannable = url !== null && /^https?:/i.test(url);
  return { ...state, tabUrl: url, scannable };
}

export function scanStarted(state: PopupState): PopupState {
  if (!state.scannable || state.phase === 'scanning') return state;
  return {
    ...state,
    phase: 'scanning',
    report: null,
    errorMessage: null,
    token: state.token + 1,
  };
}

export function scanSucceeded(
  state: PopupState,
  token: number,
  report: ScanReport,
): PopupState {
  if (token !== state.token || state.phase !== 'scanning') return state; // stale
  return { ...state, phase: 'done', report, errorMessage: null };
}

export function scanFailed(
  state: PopupState,
  token: number,
  message: string,
): PopupState {
  if (token !== state.token || state.phase !== 'scanning') return state; // stale
  return { ...state, phase: 'error', report: null, errorMessage: message };
}
