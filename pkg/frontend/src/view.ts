/**
 * Render functions. Deliberately dumb: results come out in API order with
 * API scores; enrichment terms and weights are echoed verbatim. No
 * sorting, no recomputation, no rounding tricks beyond display formatting
 * of the numbers the API sent.
 */

import type { EnrichedTerm, RecommendationItem, SearchResultItem } from "./api.js";
import { label, type UiLanguage } from "./i18n.js";

const RTL_LANGUAGES = new Set(["ar"]);

export function directionFor(language: string): "rtl" | "ltr" {
  return RTL_LANGUAGES.has(language) ? "rtl" : "ltr";
}

export function pickTitle(titles: Record<string, string>, preferred: string): string {
  if (titles[preferred]) return titles[preferred];
  for (const lang of ["fr", "ar", "en"]) {
    if (titles[lang]) return titles[lang];
  }
  const any = Object.values(titles);
  return any.length > 0 ? (any[0] as string) : "";
}

function badge(provenance: string): HTMLElement {
  const span = document.createElement("span");
  span.className = `badge badge-${provenance}`;
  span.textContent = provenance;
  return span;
}

export function renderResults(
  container: HTMLElement,
  results: SearchResultItem[],
  language: string,
  uiLanguage: UiLanguage | "auto",
): void {
  container.replaceChildren();
  if (results.length === 0) {
    const empty = document.createElement("p");
    empty.className = "no-results";
    empty.textContent = label(uiLanguage, "noResults");
    container.appendChild(empty);
    return;
  }
  for (const result of results) {
    const item = document.createElement("article");
    item.className = "result";
    item.dataset.serviceId = result.id;

    const title = document.createElement("a");
    title.className = "result-title";
    title.href = result.url;
    title.textContent = pickTitle(result.titles, language);
    title.dataset.serviceId = result.id;
    const titleLang = result.titles[language] ? language : Object.keys(result.titles)[0] ?? language;
    title.dir = directionFor(titleLang);
    item.appendChild(title);

    const meta = document.createElement("p");
    meta.className = "result-meta";
    const score = document.createElement("span");
    score.className = "result-score";
    score.textContent = String(result.score);
    meta.appendChild(score);
    const admin = document.createElement("span");
    admin.className = "result-admin";
    admin.textContent = result.administration;
    meta.appendChild(admin);
    item.appendChild(meta);

    const badges = document.createElement("p");
    badges.className = "result-badges";
    const seen = new Set<string>();
    for (const line of result.explanation) {
      if (seen.has(line.provenance)) continue;
      seen.add(line.provenance);
      badges.appendChild(badge(line.provenance));
    }
    item.appendChild(badges);

    container.appendChild(item);
  }
}

export function renderEnrichment(panel: HTMLElement, list: HTMLElement, terms: EnrichedTerm[]): void {
  list.replaceChildren();
  if (terms.length === 0) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  for (const term of terms) {
    const row = document.createElement("li");
    row.className = "enriched-term";

    const key = document.createElement("span");
    key.className = "term-key";
    key.textContent = term.key;
    row.appendChild(key);

    const weight = document.createElement("span");
    weight.className = "term-weight";
    weight.textContent = String(term.weight);
    row.appendChild(weight);

    row.appendChild(badge(term.provenance));
    list.appendChild(row);
  }
}

export function renderRecommendations(
  panel: HTMLElement,
  list: HTMLElement,
  items: RecommendationItem[],
  language: string,
): void {
  list.replaceChildren();
  if (items.length === 0) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  for (const item of items) {
    const row = document.createElement("li");
    const link = document.createElement("a");
    link.href = item.url;
    link.dataset.serviceId = item.id;
    link.textContent = pickTitle(item.titles, language);
    row.appendChild(link);
    list.appendChild(row);
  }
}

export function renderError(banner: HTMLElement, code: string, message: string, uiLanguage: UiLanguage | "auto"): void {
  banner.hidden = false;
  banner.textContent = `${label(uiLanguage, "errorPrefix")} [${code}]: ${message}`;
}

export function clearError(banner: HTMLElement): void {
  banner.hidden = true;
  banner.textContent = "";
}
