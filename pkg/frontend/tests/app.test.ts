import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { FakeFetch, STUB_RESPONSE, makeApp, mountDom } from "./harness.js";
import { userToken } from "../src/token.js";

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("submit gating", () => {
  it("disables submit while the input is empty", () => {
    new FakeFetch();
    const elements = mountDom();
    makeApp(elements);
    expect(elements.submit.disabled).toBe(true);

    elements.input.value = "visa";
    elements.input.dispatchEvent(new Event("input"));
    expect(elements.submit.disabled).toBe(false);

    elements.input.value = "   ";
    elements.input.dispatchEvent(new Event("input"));
    expect(elements.submit.disabled).toBe(true);
  });
});

describe("error handling", () => {
  it("shows the API error body and keeps previous results", async () => {
    const fetchStub = new FakeFetch((url) =>
      url.includes("/search") ? FakeFetch.json(STUB_RESPONSE) : FakeFetch.json({ recommendations: [] }),
    );
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "duty free";
    await app.submitQuery();
    expect(elements.results.querySelectorAll(".result")).toHaveLength(3);

    fetchStub.respondWith((url) =>
      url.includes("/search")
        ? FakeFetch.json({ code: "empty-query", message: "q must be non-empty" }, 400)
        : FakeFetch.json({ recommendations: [] }),
    );
    app.state.query = "x";
    await app.submitQuery();

    expect(elements.errorBanner.hidden).toBe(false);
    expect(elements.errorBanner.textContent).toContain("empty-query");
    expect(elements.errorBanner.textContent).toContain("q must be non-empty");
    // state otherwise preserved
    expect(elements.results.querySelectorAll(".result")).toHaveLength(3);
  });

  it("shows a banner when the API is down", async () => {
    new FakeFetch(() => {
      throw new Error("connection refused");
    });
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "visa";
    await app.submitQuery();
    expect(elements.errorBanner.hidden).toBe(false);
  });

  it("feedback failure does not block navigation", async () => {
    const openings: string[] = [];
    const fetchStub = new FakeFetch((url) => {
      if (url.includes("/feedback")) return FakeFetch.json({ code: "boom", message: "nope" }, 500);
      if (url.includes("/search")) return FakeFetch.json(STUB_RESPONSE);
      return FakeFetch.json({ recommendations: [] });
    });
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    const elements = mountDom();
    const app = makeApp(elements, openings);
    app.state.query = "duty free";
    await app.submitQuery();
    (elements.results.querySelector("a[data-service-id]") as HTMLAnchorElement).click();
    expect(openings).toHaveLength(1);
    await vi.waitFor(() => expect(warn).toHaveBeenCalled());
    expect(fetchStub.byPath("/feedback")).toHaveLength(1);
    warn.mockRestore();
  });
});

describe("empty and cleared states", () => {
  it("renders a no-results message on an empty result list", async () => {
    new FakeFetch((url) =>
      url.includes("/search")
        ? FakeFetch.json({ results: [], enriched_terms: [], language: "fr" })
        : FakeFetch.json({ recommendations: [] }),
    );
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "de la";
    await app.submitQuery();
    expect(elements.results.querySelector(".no-results")).not.toBeNull();
    expect(elements.enrichmentPanel.hidden).toBe(true);
  });

  it("click after clear is a no-op", async () => {
    const openings: string[] = [];
    const fetchStub = new FakeFetch((url) =>
      url.includes("/search") ? FakeFetch.json(STUB_RESPONSE) : FakeFetch.json({ recommendations: [] }),
    );
    const elements = mountDom();
    const app = makeApp(elements, openings);
    app.state.query = "duty free";
    await app.submitQuery();
    app.clear();
    app.clickService("svc-a", "https://douane.example.gov/allowance");
    expect(fetchStub.byPath("/feedback")).toHaveLength(0);
    expect(openings).toHaveLength(0);
  });
});

describe("language toggle", () => {
  it("changes only the lang parameter between searches", async () => {
    const fetchStub = new FakeFetch((url) =>
      url.includes("/search") ? FakeFetch.json(STUB_RESPONSE) : FakeFetch.json({ recommendations: [] }),
    );
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "visa";
    await app.submitQuery();

    elements.langSelect.value = "ar";
    elements.langSelect.dispatchEvent(new Event("change"));
    await app.submitQuery();

    const searches = fetchStub.byPath("/search").map((r) => new URL(r.url));
    expect(searches).toHaveLength(2);
    expect(searches[0]?.searchParams.get("lang")).toBeNull();
    expect(searches[1]?.searchParams.get("lang")).toBe("ar");
    // everything but lang identical
    for (const key of ["q", "user"]) {
      expect(searches[0]?.searchParams.get(key)).toBe(searches[1]?.searchParams.get(key));
    }
  });

  it("renders Arabic responses right-to-left", async () => {
    new FakeFetch((url) =>
      url.includes("/search")
        ? FakeFetch.json({ ...STUB_RESPONSE, language: "ar" })
        : FakeFetch.json({ recommendations: [] }),
    );
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "تأشيرة";
    await app.submitQuery();
    expect(elements.main.dir).toBe("rtl");
  });
});

describe("request cancellation", () => {
  it("a newer submission wins over a stale slow one", async () => {
    let release: (() => void) | null = null;
    const slow = new Promise<void>((resolve) => {
      release = resolve;
    });
    const slowResponse = { ...STUB_RESPONSE, results: [], enriched_terms: [], language: "fr" };
    let calls = 0;
    new FakeFetch(async (url) => {
      if (url.includes("/search")) {
        calls += 1;
        if (calls === 1) {
          await slow;
          return FakeFetch.json(slowResponse);
        }
        return FakeFetch.json(STUB_RESPONSE);
      }
      return FakeFetch.json({ recommendations: [] });
    });
    const elements = mountDom();
    const app = makeApp(elements);

    app.state.query = "first";
    const first = app.submitQuery();
    app.state.query = "second";
    const second = app.submitQuery();
    release!();
    await Promise.all([first, second]);

    // the stale response must not have overwritten the newer one
    expect(elements.results.querySelectorAll(".result")).toHaveLength(3);
    expect(app.state.lastResponse?.results).toHaveLength(3);
  });
});

describe("recommendations", () => {
  it("hides the panel for a fresh user and fills it after feedback", async () => {
    let clicked = false;
    new FakeFetch((url) => {
      if (url.includes("/recommendations")) {
        return FakeFetch.json({
          recommendations: clicked
            ? [
                {
                  id: "svc-next",
                  titles: { fr: "Service suivant" },
                  url: "https://example.gov/next",
                  administration: "ADII",
                  sector: "customs",
                  interest: 0.1,
                },
              ]
            : [],
        });
      }
      if (url.includes("/feedback")) {
        clicked = true;
        return new Response(null, { status: 204 });
      }
      return FakeFetch.json(STUB_RESPONSE);
    });
    const elements = mountDom();
    const app = makeApp(elements);

    await app.loadRecommendations();
    expect(elements.recommendationsPanel.hidden).toBe(true);

    app.state.query = "duty free";
    await app.submitQuery();
    (elements.results.querySelector("a[data-service-id]") as HTMLAnchorElement).click();
    await vi.waitFor(() => expect(elements.recommendationsPanel.hidden).toBe(false));
    expect(elements.recommendationsList.textContent).toContain("Service suivant");
  });

  it("hides the panel on API errors", async () => {
    new FakeFetch((url) =>
      url.includes("/recommendations")
        ? FakeFetch.json({ code: "boom", message: "nope" }, 500)
        : FakeFetch.json(STUB_RESPONSE),
    );
    const elements = mountDom();
    const app = makeApp(elements);
    await app.loadRecommendations();
    expect(elements.recommendationsPanel.hidden).toBe(true);
  });
});

describe("user token", () => {
  it("is generated once and persisted", () => {
    const store = new Map<string, string>();
    const storage = {
      getItem: (k: string) => store.get(k) ?? null,
      setItem: (k: string, v: string) => void store.set(k, v),
    } as Storage;
    const first = userToken(storage);
    const second = userToken(storage);
    expect(first).toBe(second);
    expect(first.length).toBeGreaterThan(4);
  });
});
