/**
 * Pure rendering: PopupState -> node tree. No DOM access here, so the
 * verdict banner, probability line and the 22-feature checklist are
 * snapshot-testable without a browser. `apply` in dom.ts realizes the tree.
 */

import type { PopupState } from './state';
import type { FeatureStatus, ScanReport, Verdict } from './schema';

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: Array<VNode | string>;
}

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Array<VNode | string>
): VNode {
  return { tag, attrs, children };
}

export const VERDICT_COLORS: Record<Verdict, string> = {
  safe: '#1d8f3c',
  warning: '#d88a00',
  dangerous: '#c62828',
};

export const VERDICT_HEADLINES: Record<Verdict, string> = {
  safe: 'This site looks safe',
  warning: 'Be careful on this site',
  dangerous: 'This site is dangerous',
};

// Our own wording: the warning copy explains the zone without claiming certainty.
export const VERDICT_DETAILS: Record<Verdict, string> = {
  safe: 'No phishing evidence stood out during the scan.',
  warning:
    'The scan classifies this site as safe, but several signals are ' +
    'questionable. Double-check the address before entering credentials.',
  dangerous: 'The scan classifies this site as a phishing page. Leave it.',
};

const STATUS_GLYPHS: Record<FeatureStatus, string> = {
  pass: '✓',
  suspicious: '?',
  fail: '✗',
};

export function verdictColor(verdict: Verdict): string {
  return VERDICT_COLORS[verdict];
}

function featureRow(feature: ScanReport['features'][number]): VNode {
  return h(
    'li',
    { class: `feature feature-${feature.status}`, 'data-feature-id': String(feature.id) },
    h('span', { class: 'glyph' }, STATUS_GLYPHS[feature.status]),
    h('span', { class: 'name' }, feature.name),
    h('span', { class: 'status' }, feature.status),
  );
}

function banner(report: ScanReport): VNode {
  const pct = (report.phishing_probability * 100).toFixed(1);
  return h(
    'div',
    {
      class: `banner banner-${report.verdict}`,
      style: `background:${VERDICT_COLORS[report.verdict]}`,
      role: 'status',
    },
    h('h1', {}, VERDICT_HEADLINES[report.verdict]),
    h('p', { class: 'probability' }, `Phishing probability: ${pct}%`),
    h('p', { class: 'detail' }, VERDICT_DETAILS[report.verdict]),
  );
}

function reportView(report: ScanReport): VNode {
  const failed = report.features.filter((f) => f.status === 'fail').length;
  const suspicious = report.features.filter((f) => f.status === 'suspicious').length;
  const children: Array<VNode | string> = [
    banner(report),
    h('p', { class: 'scanned-url', title: report.url }, report.url),
    h(
      'p',
      { class: 'summary' },
      `${report.features.length - failed - suspicious} checks passed, ` +
        `${suspicious} suspicious, ${failed} failed`,
    ),
    h('ul', { class: 'features' }, ...report.features.map(featureRow)),
    h('p', { class: 'model' }, `model ${report.model_id}`),
  ];
  if (report.degraded) {
    children.splice(
      1,
      0,
      h(
        'p',
        { class: 'degraded' },
        `Page content could not be fetched (${report.fetch_status}); ` +
          'the verdict uses URL and registry evidence only.',
      ),
    );
  }
  return h('div', { class: 'report' }, ...children);
}

export function render(state: PopupState): VNode {
  const scanDisabled = !state.scannable || state.phase === 'scanning';
  const pieces: Array<VNode | string> = [
    h(
      'button',
      {
        id: 'scan',
        class: 'scan-button',
        ...(scanDisabled ? { disabled: 'disabled' } : {}),
      },
      state.phase === 'scanning' ? 'Scanning…' : 'Scan this site',
    ),
  ];
  if (!state.scannable && state.tabUrl !== null) {
    pieces.push(
      h('p', { class: 'hint' }, 'Only http(s) pages can be scanned.'),
    );
  }
  if (state.phase === 'error' && state.errorMessage) {
    pieces.push(
      h(
        'div',
        { class: 'error', role: 'alert' },
        h('p', {}, `Scan failed: ${state.errorMessage}`),
        h('p', { class: 'hint' }, 'Check that the detection service is running, then retry.'),
      ),
    );
  }
  if (state.phase === 'done' && state.report) {
    pieces.push(reportView(state.report));
  }
  return h('div', { id: 'popup-root' }, ...pieces);
}
