import { describe, expect, it } from 'vitest';

import {
  initialState,
  scanFailed,
  scanStarted,
  scanSucceeded,
  tabResolved,
} from '../src/state';
import { goldenReport } from './helpers';

describe('popup state machine', () => {
  it('starts idle and unscannable', () => {
    const s = initialState();
    expect(s.phase).toBe('idle');
    expect(s.scannable).toBe(false);
    expect(s.report).toBeNull();
  });

  it('only http(s) tabs are scannable', () => {
    const s = initialState();
    expect(tabResolved(s, 'https://example.com/').scannable).toBe(true);
    expect(tabResolved(s, 'http://example.com/').scannable).toBe(true);
    expect(tabResolved(s, 'chrome://settings').scannable).toBe(false);
    expect(tabResolved(s, 'about:blank').scannable).toBe(false);
    expect(tabResolved(s, null).scannable).toBe(false);
  });

  it('scanStarted is a no-op when unscannable or already scanning', () => {
    const idle = initialState();
    expect(scanStarted(idle)).toBe(idle);
    const ready = tabResolved(idle, 'https://example.com/');
    const scanning = scanStarted(ready);
    expect(scanning.phase).toBe('scanning');
    expect(scanStarted(scanning)).toBe(scanning);
  });

  it('success requires a live token and moves to done', () => {
    const report = goldenReport('safe');
    let s = tabResolved(initialState(), 'https://example.com/');
    s = scanStarted(s);
    const done = scanSucceeded(s, s.token, report);
    expect(done.phase).toBe('done');
    expect(done.report).toBe(report);
  });

  it('stale responses are discarded, success and failure alike', () => {
    const report = goldenReport('safe');
    let s = tabResolved(initialState(), 'https://example.com/');
    s = scanStarted(s);
    const staleToken = s.token;
    // user retriggers; a second scan supersedes the first
    s = { ...s, phase: 'error' as const };
    s = scanStarted(s);
    expect(s.token).toBe(staleToken + 1);
    expect(scanSucceeded(s, staleToken, report)).toBe(s);
    expect(scanFailed(s, staleToken, 'boom')).toBe(s);
    const done = scanSucceeded(s, s.token, report);
    expect(done.phase).toBe('done');
  });

  it('failure carries the message and drops any report', () => {
    let s = tabResolved(initialState(), 'https://example.com/');
    s = scanStarted(s);
    const failed = scanFailed(s, s.token, 'service unreachable');
    expect(failed.phase).toBe('error');
    expect(failed.errorMessage).toBe('service unreachable');
    expect(failed.report).toBeNull();
  });

  it('exactly one phase at a time: done implies report present', () => {
    const report = goldenReport('dangerous');
    let s = tabResolved(initialState(), 'https://example.com/');
    s = scanStarted(s);
    s = scanSucceeded(s, s.token, report);
    expect(s.phase).toBe('done');
    expect(s.report).not.toBeNull();
    expect(s.errorMessage).toBeNull();
  });
});
