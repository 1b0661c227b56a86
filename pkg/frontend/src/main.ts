import { ApiClient } from "./api.js";
import { mount } from "./app.js";
import { userToken } from "./token.js";

declare global {
  interface Window {
    EGOV_API_BASE?: string;
  }
}

const base = window.EGOV_API_BASE ?? "http://127.0.0.1:8080";
mount(document, new ApiClient(base), userToken());
