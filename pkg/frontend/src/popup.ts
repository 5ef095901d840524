/** Popup wiring: resolve the active tab, drive the state machine, render. */

import { getEndpoint, scanUrl } from './api';
import { realStorage, realTabs } from './chrome';
import { mount } from './dom';
import { render } from './render';
import {
  initialState,
  scanFailed,
  scanStarted,
  scanSucceeded,
  tabResolved,
  type PopupState,
} from './state';

const tabs = realTabs();
const storage = realStorage();

let state: PopupState = initialState();
const container = document.getElementById('app') as Element;

function update(next: PopupState): void {
  state = next;
  mount(document, container, render(state));
  const button = container.querySelector('#scan');
  button?.addEventListener('click', onScan);
}

async function onScan(): Promise<void> {
  const started = scanStarted(state);
  if (started === state) return;
  update(started);
  const token = started.token;
  try {
    const endpoint = await getEndpoint(storage);
    const report = await scanUrl(endpoint, started.tabUrl as string, fetch);
    update(scanSucceeded(state, token, report));
  } catch (error) {
    const message = error instanceof Error ? error.message : String(error);
    update(scanFailed(state, token, message));
  }
}

async function init(): Promise<void> {
  let url: string | null = null;
  try {
    url = await tabs.activeUrl();
  } catch {
    url = null;
  }
  update(tabResolved(state, url));
}

void init();
