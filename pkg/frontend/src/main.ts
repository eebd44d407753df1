import { GameClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root === null) throw new Error("missing #app mount point");

const app = new App(root, new GameClient(""));
void app.start();

// handy for poking at the running game from the console
(window as unknown as { simgame: App }).simgame = app;
