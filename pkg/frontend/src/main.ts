import { ApiClient } from "./api.js";
import { Composer } from "./app.js";

// ?api=http://host:port targets a remote service; default is same-origin
const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app element");
}

const composer = new Composer(root, new ApiClient(base));
void composer.init();
