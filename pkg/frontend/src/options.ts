/** Options page: persist the detection-service endpoint. */

import { DEFAULT_ENDPOINT, getEndpoint, setEndpoint } from './api';
import { realStorage } from './chrome';

const storage = realStorage();
const input = document.getElementById('endpoint') as HTMLInputElement;
const saved = document.getElementById('saved') as HTMLElement;
const form = document.getElementById('endpoint-form') as HTMLFormElement;

async function load(): Promise<void> {
  input.value = await getEndpoint(storage);
  input.placeholder = DEFAULT_ENDPOINT;
}

form.addEventListener('submit', (event) => {
  event.preventDefault();
  void (async () => {
    const value = await setEndpoint(storage, input.value);
    input.value = value;
    saved.textContent = `Saved. Scans will use ${value}.`;
  })();
});

void load();
