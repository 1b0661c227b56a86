/**
 * Controller: wires the DOM to the API client and owns the view state.
 *
 * Invariants kept here:
 *   - at most one search request in flight; a newer submission aborts the
 *     older one
 *   - the UI never reorders or rescores anything: render functions get
 *     API payloads untouched
 *   - one feedback POST per rendered result per render (double clicks are
 *     swallowed); feedback failures never block navigation
 *   - the language toggle changes only the `lang` parameter and the text
 *     direction
 */

import { ApiClient, ApiError, type RecommendationItem, type SearchResponse } from "./api.js";
import { label, type UiLanguage } from "./i18n.js";
import {
  clearError,
  directionFor,
  renderEnrichment,
  renderError,
  renderRecommendations,
  renderResults,
} from "./view.js";

export type LanguageChoice = UiLanguage | "auto";

export interface ViewState {
  query: string;
  language: LanguageChoice;
  user: string;
  lastResponse: SearchResponse | null;
  recommendations: RecommendationItem[];
  loading: boolean;
  error: { code: string; message: string } | null;
}

export interface AppElements {
  form: HTMLFormElement;
  input: HTMLInputElement;
  submit: HTMLButtonElement;
  langSelect: HTMLSelectElement;
  errorBanner: HTMLElement;
  results: HTMLElement;
  enrichmentPanel: HTMLElement;
  enrichmentToggle: HTMLElement;
  enrichmentList: HTMLElement;
  recommendationsPanel: HTMLElement;
  recommendationsList: HTMLElement;
  main: HTMLElement;
}

export class SearchApp {
  readonly state: ViewState;
  private inFlight: AbortController | null = null;
  private feedbackSent = new Set<string>();
  private openInNewContext: (url: string) => void;

  constructor(
    private readonly api: ApiClient,
    private readonly el: AppElements,
    user: string,
    openInNewContext?: (url: string) => void,
  ) {
    this.state = {
      query: "",
      language: "auto",
      user,
      lastResponse: null,
      recommendations: [],
      loading: false,
      error: null,
    };
    this.openInNewContext = openInNewContext ?? ((url) => window.open(url, "_blank", "noopener"));

    this.el.input.addEventListener("input", () => {
      this.state.query = this.el.input.value;
      this.el.submit.disabled = this.state.query.trim().length === 0;
    });
    this.el.submit.disabled = true;

    this.el.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submitQuery();
    });

    this.el.langSelect.addEventListener("change", () => {
      this.state.language = this.el.langSelect.value as LanguageChoice;
    });

    this.el.enrichmentToggle.addEventListener("click", () => {
      this.el.enrichmentList.hidden = !this.el.enrichmentList.hidden;
    });

    this.el.results.addEventListener("click", (event) => this.onResultClick(event));
    this.el.recommendationsPanel.addEventListener("click", (event) => this.onResultClick(event));
  }

  async submitQuery(): Promise<void> {
    const query = this.state.query.trim();
    if (!query) return;

    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    this.state.loading = true;
    this.el.main.classList.add("loading");

    const lang = this.state.language === "auto" ? undefined : this.state.language;
    try {
      const response = await this.api.search(query, lang, this.state.user, controller.signal);
      if (controller !== this.inFlight) return; // a newer submission won
      this.state.lastResponse = response;
      this.state.error = null;
      clearError(this.el.errorBanner);
      this.renderResponse(response);
    } catch (error) {
      if (controller.signal.aborted) return; // superseded, keep quiet
      // the banner appears; the previous results stay on screen
      if (error instanceof ApiError) {
        this.state.error = { code: error.code, message: error.message };
      } else {
        this.state.error = { code: "network", message: String(error) };
      }
      renderError(this.el.errorBanner, this.state.error.code, this.state.error.message, this.state.language);
    } finally {
      if (controller === this.inFlight) {
        this.inFlight = null;
        this.state.loading = false;
        this.el.main.classList.remove("loading");
      }
    }
  }

  private renderResponse(response: SearchResponse): void {
    this.feedbackSent = new Set();
    this.el.main.dir = directionFor(response.language);
    renderResults(this.el.results, response.results, response.language, this.state.language);
    renderEnrichment(this.el.enrichmentPanel, this.el.enrichmentList, response.enriched_terms);
  }

  private onResultClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    const anchor = target?.closest("a[data-service-id]") as HTMLAnchorElement | null;
    if (!anchor) return;
    event.preventDefault();
    const serviceId = anchor.dataset.serviceId;
    if (!serviceId) return;
    this.clickService(serviceId, anchor.href);
  }

  clickService(serviceId: string, url: string): void {
    if (this.state.lastResponse === null && this.el.recommendationsPanel.hidden) return;
    if (!this.feedbackSent.has(serviceId)) {
      this.feedbackSent.add(serviceId);
      this.api
        .feedback(this.state.user, serviceId, this.state.query.trim() || undefined)
        .then(() => this.loadRecommendations())
        .catch((error) => console.warn("feedback failed (non-blocking):", error));
    }
    this.openInNewContext(url);
  }

  async loadRecommendations(): Promise<void> {
    try {
      const response = await this.api.recommendations(this.state.user);
      this.state.recommendations = response.recommendations;
      const language = this.state.lastResponse?.language ?? "fr";
      renderRecommendations(
        this.el.recommendationsPanel,
        this.el.recommendationsList,
        response.recommendations,
        language,
      );
    } catch {
      this.state.recommendations = [];
      this.el.recommendationsPanel.hidden = true;
    }
  }

  clear(): void {
    this.state.lastResponse = null;
    this.state.query = "";
    this.el.input.value = "";
    this.el.submit.disabled = true;
    this.el.results.replaceChildren();
    this.el.enrichmentPanel.hidden = true;
    this.feedbackSent = new Set();
  }
}

export function mount(root: Document, api: ApiClient, user: string): SearchApp {
  const get = <T extends HTMLElement>(id: string): T => {
    const element = root.getElementById(id);
    if (!element) throw new Error(`missing element #${id}`);
    return element as T;
  };
  const elements: AppElements = {
    form: get<HTMLFormElement>("search-form"),
    input: get<HTMLInputElement>("search-input"),
    submit: get<HTMLButtonElement>("search-submit"),
    langSelect: get<HTMLSelectElement>("lang-select"),
    errorBanner: get("error-banner"),
    results: get("results"),
    enrichmentPanel: get("enrichment-panel"),
    enrichmentToggle: get("enrichment-toggle"),
    enrichmentList: get("enrichment-list"),
    recommendationsPanel: get("recommendations-panel"),
    recommendationsList: get("recommendations-list"),
    main: get("app-main"),
  };
  const app = new SearchApp(api, elements, user);
  void app.loadRecommendations();
  return app;
}
