/**
 * Client for the detection service. The endpoint is configurable and
 * persisted in extension storage; the default matches a locally running
 * service on port 3000.
 */

import { validateScanReport, type ScanReport } from './schema';
import type { StorageApi } from './chrome';

export const DEFAULT_ENDPOINT = 'http://localhost:3000';
export const ENDPOINT_KEY = 'nophish.endpoint';

export type FetchLike = (input: string, init?: {
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export async function getEndpoint(storage: StorageApi): Promise<string> {
  const stored = await storage.get(ENDPOINT_KEY);
  return stored && stored.trim() !== '' ? stored : DEFAULT_ENDPOINT;
}

export async function setEndpoint(storage: StorageApi, endpoint: string): Promise<string> {
  const cleaned = endpoint.trim().replace(/\/+$/, '');
  const value = cleaned === '' ? DEFAULT_ENDPOINT : cleaned;
  await storage.set(ENDPOINT_KEY, value);
  return value;
}

export async function scanUrl(
  endpoint: string,
  url: string,
  fetchImpl: FetchLike,
): Promise<ScanReport> {
  const response = await fetchImpl(`${endpoint}/detectphishing`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ url }),
  });
  const body = await response.json().catch(() => {
    throw new Error(`service answered ${response.status} without JSON`);
  });
  if (!response.ok) {
    const detail =
      typeof body === 'object' && body !== null && 'error' in body
        ? String((body as { error: unknown }).error)
        : `HTTP ${response.status}`;
    throw new Error(detail);
  }
  return validateScanReport(body);
}
