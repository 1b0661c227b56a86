/**
 * Thin-client acceptance: with a stubbed API, the rendered result order,
 * scores and enrichment panel equal the stub verbatim, and one click on a
 * result emits exactly one feedback POST with the correct service id.
 *
 * The stub's results are deliberately NOT sorted by score (4.25, 9.5, 1.0):
 * any client-side re-ranking would show up immediately.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { FakeFetch, STUB_RESPONSE, makeApp, mountDom } from "./harness.js";

describe("thin client", () => {
  let fetchStub: FakeFetch;

  beforeEach(() => {
    fetchStub = new FakeFetch((url) => {
      if (url.includes("/search")) return FakeFetch.json(STUB_RESPONSE);
      return FakeFetch.json({ recommendations: [] });
    });
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  it("renders results in API order with API scores, verbatim", async () => {
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "duty free";
    await app.submitQuery();

    const rendered = [...elements.results.querySelectorAll(".result")];
    expect(rendered.map((el) => (el as HTMLElement).dataset.serviceId)).toEqual([
      "svc-b",
      "svc-a",
      "svc-c",
    ]);
    const scores = [...elements.results.querySelectorAll(".result-score")].map(
      (el) => el.textContent,
    );
    expect(scores).toEqual(["4.25", "9.5", "1"]);

    const titles = [...elements.results.querySelectorAll(".result-title")].map(
      (el) => el.textContent,
    );
    expect(titles).toEqual([
      "Franchise douanière pour les voyageurs",
      "Duty-free allowance for travellers",
      "معلومات سماح المسافر",
    ]);
  });

  it("renders the enrichment panel content verbatim", async () => {
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "duty free";
    await app.submitQuery();

    expect(elements.enrichmentPanel.hidden).toBe(false);
    const rows = [...elements.enrichmentList.querySelectorAll(".enriched-term")];
    const rendered = rows.map((row) => ({
      key: row.querySelector(".term-key")?.textContent,
      weight: Number(row.querySelector(".term-weight")?.textContent),
      provenance: row.querySelector(".badge")?.textContent,
    }));
    expect(rendered).toEqual(STUB_RESPONSE.enriched_terms);
  });

  it("shows provenance badges from the explanation lines", async () => {
    const elements = mountDom();
    const app = makeApp(elements);
    app.state.query = "duty free";
    await app.submitQuery();

    const first = elements.results.querySelector(".result")!;
    const badges = [...first.querySelectorAll(".badge")].map((el) => el.textContent);
    expect(badges).toEqual(["concept", "translation"]);
  });

  it("emits exactly one feedback POST per click with the right id", async () => {
    const openings: string[] = [];
    const elements = mountDom();
    const app = makeApp(elements, openings);
    app.state.query = "duty free";
    await app.submitQuery();

    const link = elements.results.querySelector('a[data-service-id="svc-a"]') as HTMLAnchorElement;
    link.click();

    const posts = fetchStub.byPath("/feedback");
    expect(posts).toHaveLength(1);
    expect(posts[0]?.method).toBe("POST");
    expect(posts[0]?.body).toEqual({ user: "test-user", service_id: "svc-a", query: "duty free" });
    expect(openings).toEqual(["https://douane.example.gov/allowance"]);
  });

  it("debounces a double click to one POST per render", async () => {
    const openings: string[] = [];
    const elements = mountDom();
    const app = makeApp(elements, openings);
    app.state.query = "duty free";
    await app.submitQuery();

    const link = elements.results.querySelector('a[data-service-id="svc-a"]') as HTMLAnchorElement;
    link.click();
    link.click();
    expect(fetchStub.byPath("/feedback")).toHaveLength(1);

    // a fresh render re-arms the feedback
    await app.submitQuery();
    (elements.results.querySelector('a[data-service-id="svc-a"]') as HTMLAnchorElement).click();
    expect(fetchStub.byPath("/feedback")).toHaveLength(2);
  });
});
