import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { validateScanReport, type ScanReport } from '../src/schema';

const here = dirname(fileURLToPath(import.meta.url));

export function goldenReport(name: 'safe' | 'warning' | 'dangerous'): ScanReport {
  const raw = readFileSync(join(here, 'fixtures', `${name}.json`), 'utf-8');
  return validateScanReport(JSON.parse(raw));
}

export function goldenRaw(name: string): unknown {
  return JSON.parse(readFileSync(join(here, 'fixtures', `${name}.json`), 'utf-8'));
}
