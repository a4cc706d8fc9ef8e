import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const base = root.dataset.apiBase ?? "";
const app = new App(root, new ApiClient(base), window.location.hash);
void app.start();
