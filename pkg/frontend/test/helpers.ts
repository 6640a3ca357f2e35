import type { FetchLike } from "../src/api";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface Route {
  method: string;
  path: string;
  status?: number;
  body: unknown;
}

/** Fake fetch that records every call and answers from a route table. */
export function fakeFetch(routes: Route[]): { fetchFn: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetchFn: FetchLike = async (input, init) => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    calls.push({
      method,
      path,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    const route = routes.find((r) => r.method === method && r.path === path);
    if (!route) {
      return new Response(
        JSON.stringify({ error: { code: "NOT_FOUND", message: `no route ${method} ${path}` } }),
        { status: 404, headers: { "Content-Type": "application/json" } },
      );
    }
    return new Response(JSON.stringify(route.body), {
      status: route.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls };
}
