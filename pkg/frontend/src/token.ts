/** Anonymous user token, generated client-side and persisted locally. */

const STORAGE_KEY = "egovsearch.user";

export function userToken(storage: Storage = window.localStorage): string {
  const existing = storage.getItem(STORAGE_KEY);
  if (existing) return existing;
  const token = "u-" + Math.random().toString(36).slice(2, 10) + Date.now().toString(36);
  storage.setItem(STORAGE_KEY, token);
  return token;
}
