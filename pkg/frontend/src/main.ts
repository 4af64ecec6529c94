// Boot: mount the app, mirror query state into the URL fragment.

import { ApiClient } from "./api.js";
import { QueryStore } from "./state.js";
import { App } from "./views.js";

const root = document.getElementById("app");
if (root) {
    const vocabAttr = root.getAttribute("data-vocabularies") ?? "";
    const vocabularies = vocabAttr.split(",").map((v) => v.trim()).filter(Boolean);
    const app = new App(root, new ApiClient(""), { vocabularies });

    app.store.subscribe(() => {
        const fragment = app.store.toFragment();
        history.replaceState(null, "", fragment ? `#${fragment}` : "#");
    });
    window.addEventListener("hashchange", () => {
        void app.start(QueryStore.fromFragment(location.hash));
    });

    void app.start(location.hash.length > 1 ? QueryStore.fromFragment(location.hash) : undefined);
}
