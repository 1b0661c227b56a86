/** UI chrome labels for fr/ar/en. Result content itself is never translated. */

export type UiLanguage = "fr" | "ar" | "en";

const LABELS: Record<UiLanguage, Record<string, string>> = {
  fr: {
    title: "Recherche de services administratifs",
    placeholder: "Rechercher un service (ex. admission en franchise)",
    submit: "Rechercher",
    autoLang: "Langue : auto",
    enrichment: "Enrichissement de la requête",
    noResults: "Aucun service trouvé.",
    recommendations: "Recommandations",
    loading: "Recherche…",
    errorPrefix: "Erreur",
  },
  ar: {
    title: "البحث عن الخدمات الإدارية",
    placeholder: "ابحث عن خدمة (مثال: إعفاء جمركي)",
    submit: "بحث",
    autoLang: "اللغة: تلقائي",
    enrichment: "إغناء الاستعلام",
    noResults: "لم يتم العثور على خدمات.",
    recommendations: "توصيات",
    loading: "جارٍ البحث…",
    errorPrefix: "خطأ",
  },
  en: {
    title: "Administrative service search",
    placeholder: "Search for a service (e.g. duty-free allowance)",
    submit: "Search",
    autoLang: "Language: auto",
    enrichment: "Query enrichment",
    noResults: "No services found.",
    recommendations: "Recommendations",
    loading: "Searching…",
    errorPrefix: "Error",
  },
};

export function label(language: UiLanguage | "auto", key: string): string {
  const lang: UiLanguage = language === "auto" ? "fr" : language;
  return LABELS[lang][key] ?? LABELS.fr[key] ?? key;
}
