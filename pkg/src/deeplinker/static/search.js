function renderResults(doc, form, rows) {
    let list = form.parentElement?.querySelector('.search-results') ?? null;
    if (!list) {
        list = doc.createElement('ul');
        list.className = 'search-results';
        form.insertAdjacentElement('afterend', list);
    }
    list.innerHTML = '';
    if (rows.length === 0) {
        const li = doc.createElement('li');
        li.className = 'empty';
        li.textContent = 'no matches';
        list.appendChild(li);
        return;
    }
    for (const row of rows) {
        const li = doc.createElement('li');
        const a = doc.createElement('a');
        a.href = row.path ?? row.subject;
        a.textContent = row.path ?? row.subject;
        li.appendChild(a);
        li.appendChild(doc.createTextNode(` ${row.predicate} ${row.object}`));
        list.appendChild(li);
    }
}
export function literalSearchBox(doc, fetchFn = fetch) {
    const form = doc.querySelector('form.search');
    const input = form?.querySelector('input[name="q"]') ?? null;
    if (!form || !input) {
        return;
    }
    form.addEventListener('submit', (event) => {
        event.preventDefault();
        const needle = input.value.trim();
        if (!needle) {
            return;
        }
        fetchFn(`/search?q=${encodeURIComponent(needle)}`)
            .then((resp) => resp.json())
            .then((doc_) => renderResults(doc, form, doc_.results))
            .catch(() => renderResults(doc, form, []));
    });
}
