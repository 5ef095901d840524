/**
 * Narrow adapter over the extension APIs the popup needs. Everything
 * chrome.* flows through here so tests can inject fakes.
 */

export interface TabsApi {
  activeUrl(): Promise<string | null>;
}

export interface StorageApi {
  get(key: string): Promise<string | null>;
  set(key: string, value: string): Promise<void>;
}

interface ChromeLike {
  tabs: {
    query(info: { active: boolean; currentWindow: boolean }): Promise<Array<{ url?: string }>>;
  };
  storage: {
    sync: {
      get(keys: string[]): Promise<Record<string, unknown>>;
      set(items: Record<string, unknown>): Promise<void>;
    };
  };
}

declare const chrome: ChromeLike;

export function realTabs(): TabsApi {
  return {
    async activeUrl() {
      const tabs = await chrome.tabs.query({ active: true, currentWindow: true });
      return tabs[0]?.url ?? null;
    },
  };
}

export function realStorage(): StorageApi {
  return {
    async get(key) {
      const items = await chrome.storage.sync.get([key]);
      const value = items[key];
      return typeof value === 'string' ? value : null;
    },
    async set(key, value) {
      await chrome.storage.sync.set({ [key]: value });
    },
  };
}
