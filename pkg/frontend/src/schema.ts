/**
 * ScanReport contract of the detection service (POST /detectphishing).
 * The popup renders exclusively from reports that pass this validator;
 * anything malformed is rejected outright, never partially rendered.
 */

export type Verdict = 'safe' | 'warning' | 'dangerous';
export type FeatureStatus = 'pass' | 'suspicious' | 'fail';

export interface FeatureOutcome {
  id: number;
  name: string;
  value: -1 | 0 | 1;
  status: FeatureStatus;
}

export interface ScanReport {
  url: string;
  verdict: Verdict;
  phishing_probability: number;
  features: FeatureOutcome[];
  model_id: string;
  evidence_provenance: Record<string, string>;
  timing_ms: number;
  degraded: boolean;
  fetch_status: string;
  final_url: string;
}

export class SchemaError extends Error {}

const VERDICTS: readonly string[] = ['safe', 'warning', 'dangerous'];
const STATUSES: readonly string[] = ['pass', 'suspicious', 'fail'];
const FEATURE_COUNT = 22;

function fail(path: string, problem: string): never {
  throw new SchemaError(`ScanReport.${path}: ${problem}`);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === 'object' && value !== null && !Array.isArray(value);
}

export function validateScanReport(raw: unknown): ScanReport {
  if (!isRecord(raw)) fail('', 'not an object');
  if (typeof raw.url !== 'string' || raw.url.length === 0) fail('url', 'missing');
  if (typeof raw.verdict !== 'string' || !VERDICTS.includes(raw.verdict)) {
    fail('verdict', `expected one of ${VERDICTS.join('/')}`);
  }
  const p = raw.phishing_probability;
  if (typeof p !== 'number' || !Number.isFinite(p) || p < 0 || p > 1) {
    fail('phishing_probability', 'not a number in [0,1]');
  }
  if (!Array.isArray(raw.features) || raw.features.length !== FEATURE_COUNT) {
    fail('features', `expected exactly ${FEATURE_COUNT} entries`);
  }
  const seen = new Set<number>();
  for (const [i, entry] of raw.features.entries()) {
    if (!isRecord(entry)) fail(`features[${i}]`, 'not an object');
    if (typeof entry.id !== 'number' || entry.id < 0 || entry.id >= FEATURE_COUNT) {
      fail(`features[${i}].id`, 'out of range');
    }
    if (seen.has(entry.id)) fail(`features[${i}].id`, 'duplicate');
    seen.add(entry.id);
    if (typeof entry.name !== 'string' || entry.name.length === 0) {
      fail(`features[${i}].name`, 'missing');
    }
    if (entry.value !== -1 && entry.value !== 0 && entry.value !== 1) {
      fail(`features[${i}].value`, 'not ternary');
    }
    if (typeof entry.status !== 'string' || !STATUSES.includes(entry.status)) {
      fail(`features[${i}].status`, `expected one of ${STATUSES.join('/')}`);
    }
  }
  if (typeof raw.model_id !== 'string' || raw.model_id.length === 0) {
    fail('model_id', 'missing');
  }
  if (!isRecord(raw.evidence_provenance)) fail('evidence_provenance', 'not an object');
  for (const [key, value] of Object.entries(raw.evidence_provenance)) {
    if (typeof value !== 'string') fail(`evidence_provenance.${key}`, 'not a string');
  }
  if (typeof raw.timing_ms !== 'number' || raw.timing_ms < 0) fail('timing_ms', 'bad');
  if (typeof raw.degraded !== 'boolean') fail('degraded', 'not a boolean');
  if (typeof raw.fetch_status !== 'string') fail('fetch_status', 'missing');
  if (typeof raw.final_url !== 'string') fail('final_url', 'missing');
  return raw as unknown as ScanReport;
}
